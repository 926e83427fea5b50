// Runs the twelve acceptance checks and prints one PASS/FAIL line per check.
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "painleve/painleve.hpp"

using namespace painleve;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

Outcome elementary_solutions()
{
    // eta = 1/4 pairs with e^{+4 sqrt t}, eta = 0 with e^{-4 sqrt t}
    double worst = 0;
    for (auto [eta, sign] : {std::pair{0.25, 1.0}, std::pair{0.0, -1.0}}) {
        std::vector<cplx> c(9, 0.0);
        PowerSeries series = z_dual_series(0.25, eta, {8, 4});
        for (const auto& term : series.terms()) {
            double twice = 2.0 * term.exponent.real();
            long k = std::lround(twice);
            if (std::abs(twice - double(k)) > 1e-12 || std::abs(term.exponent.imag()) > 1e-12) return {false, "non half-integer exponent"};
            if (k >= 0 && k <= 8) c[size_t(k)] += term.coefficient;
        }
        double fact = 1;
        for (int k = 0; k <= 8; ++k) {
            if (k) fact *= k;
            worst = std::max(worst, rel_diff(c[size_t(k)], std::pow(4.0 * sign, k) / fact));
        }
    }
    return {worst < 1e-8, fmt("max rel err %.2e", worst)};
}

Outcome one_instanton()
{
    double worst = 0;
    for (cplx nu : {cplx(0.37), cplx(0.2, 0.1)}) worst = std::max(worst, rel_diff(z_inst_coefficients(nu, 1)[1], 1.0 / (2.0 * nu * nu)));
    return {worst < 1e-12, fmt("max rel err %.2e", worst)};
}

Outcome three_routes()
{
    auto p = MonodromyParams::from_nu(0.37, 0.11);
    bool ok = true;
    std::string d;
    for (double t : {0.01, 0.05, 0.1, 0.2}) {
        auto r = cross_validate(t, p, {12, 6, 2});
        double bound = (t <= 0.01) ? 1e-8 : std::max(1e-8, 10.0 * r.max_relative_est());
        ok = ok && r.max_pairwise() < bound;
        d += fmt("t=%.2f diff %.1e", t, r.max_pairwise()) + fmt(" (bound %.1e) ", bound);
    }
    return {ok, d};
}

Outcome mode_oracle()
{
    double worst = 0;
    for (auto p : {MonodromyParams::from_nu(0.37, 0.11), MonodromyParams::from_nu({0.29, 0.08}, {0.17, -0.09})}) {
        ContinuousKernel ka{KernelKind::a, p, 0.0}, kd{KernelKind::d, p, 0.05};
        worst = std::max(worst, max_entry_diff(modes_by_quadrature(ka, 8, default_radius(ka)), mode_matrix_a(p, 8)));
        worst = std::max(worst, max_entry_diff(modes_by_quadrature(kd, 8, default_radius(kd)), mode_matrix_d(p, 0.05, 8)));
    }
    return {worst < 1e-10, fmt("max entry diff %.2e", worst)};
}

Outcome rank_one()
{
    double worst = 0;
    for (auto p : {MonodromyParams::from_nu(0.37, 0.11), MonodromyParams::from_nu({0.29, 0.08}, {0.17, -0.09})})
        worst = std::max(worst, rank_one_residual(p, 8).worst());
    return {worst < 1e-10, fmt("residual %.2e", worst)};
}

Outcome xi_delta_factorization()
{
    double worst = 0;
    for (cplx nu : {cplx(0.37), cplx(0.21, -0.13)}) worst = std::max(worst, check_factorization_identities(nu, 4, 2).xi_delta_error);
    return {worst < 1e-10, fmt("max rel err %.2e", worst)};
}

Outcome z_bif_identities()
{
    std::vector<YoungDiagram> ys;
    for (int k = 0; k <= 6; ++k)
        for (auto& y : partitions_of(k)) ys.push_back(y);
    cplx nu(0.31, -0.17);
    double worst = 0;
    for (const auto& a : ys) {
        for (const auto& b : ys) {
            double sign = ((a.weight() + b.weight()) % 2 == 0) ? 1.0 : -1.0;
            worst = std::max(worst, rel_diff(z_bif(-nu, b, a), sign * z_bif(nu, a, b)));
        }
        cplx hooks = 1.0;
        a.for_each_box([&](int i, int j) { hooks *= double(hook(a, i, j) * hook(a, i, j)); });
        worst = std::max(worst, rel_diff(z_bif(0.0, a, a), (a.weight() % 2 == 0 ? 1.0 : -1.0) * hooks));
    }
    return {worst < 1e-13, fmt("max rel err %.2e", worst)};
}

Outcome ode_residuals()
{
    auto p = MonodromyParams::from_nu(0.37, 0.11);
    double maya = 0, fred = 0;
    for (double t : {0.02, 0.05, 0.1}) {
        maya = std::max(maya, ode_residual(t, p, Method::maya, {12, 8, 3}, 1e-3, DiffScheme::analytic));
        fred = std::max(fred, ode_residual(t, p, Method::fredholm, {12, 6, 2}, 1e-3, DiffScheme::circle));
    }
    return {maya < 1e-6 && fred < 1e-5, fmt("maya %.2e, fredholm circle stencil %.2e", maya, fred)};
}

Outcome painleve_three()
{
    auto p = MonodromyParams::from_nu(0.37, 0.11);
    double r = painleve_q(0.05, p, Method::maya, {}, 1e-3).residual;
    // q = -sqrt t exactly; the stencil error must shrink at fourth order
    auto dev = [](double h) {
        PainleveQ e = painleve_q(0.05, MonodromyParams::from_nu(0.25, 0.25), Method::nekrasov, {12, 8, 4}, h,
                                 DiffScheme::stencil5);
        return std::abs(e.q + std::sqrt(0.05));
    };
    double d1 = dev(1e-3), d2 = dev(5e-4);
    bool ok = r < 1e-5 && d1 < 1e-6 && d1 / d2 > 12.0;
    return {ok, fmt("residual %.2e, elementary |q + sqrt t| %.2e", r, d1) + fmt(" (h/2 reduces it %.1fx)", d1 / d2)};
}

Outcome quasi_periodicity()
{
    double d = std::max(quasi_periodicity_term_defect(0.37, 0.11, {6, 2}), quasi_periodicity_term_defect({0.23, 0.1}, {0.3, -0.05}, {6, 2}));
    return {d < 1e-11, fmt("max rel defect %.2e", d)};
}

Outcome maya_bijection()
{
    int failures = 0;
    for (unsigned mask = 0; mask < (1u << 20); ++mask) {
        std::vector<HalfInteger> particles, holes;
        for (int k = 0; k < 10; ++k) {
            if (mask & (1u << k)) particles.push_back(HalfInteger::above(k));
            if (mask & (1u << (10 + k))) holes.push_back(HalfInteger::above(-k - 1));
        }
        MayaDiagram m(particles, holes);
        auto [y, Q] = young_from_maya(m);
        if (!(maya_from_young(y, Q) == m) || twice_momentum_sum(m) != Q * Q + 2 * y.weight()) ++failures;
    }
    YoungDiagram example_plus({4, 2, 1, 1, 1});
    MayaDiagram m = maya_from_young(example_plus, -1);
    bool sum_rule = twice_momentum_sum(m) == 1 + 2 * 9;
    return {failures == 0 && sum_rule, fmt("%.0f round-trip failures over 2^20 diagrams", failures)};
}

Outcome branch_independence()
{
    double worst = 0;
    for (auto p : {MonodromyParams::from_nu(0.37, 0.11), MonodromyParams::from_nu({0.29, 0.08}, {0.17, -0.09})}) {
        cplx base = fredholm_det(build_modes(p, 0.1, 12));
        for (BranchChoice b : {BranchChoice{true, false}, BranchChoice{false, true}, BranchChoice{true, true}})
            worst = std::max(worst, rel_diff(fredholm_det(build_modes(p, 0.1, 12, b)), base));
    }
    return {worst < 1e-12, fmt("max rel change %.2e", worst)};
}

}  // namespace

int main()
{
    std::vector<std::pair<const char*, std::function<Outcome()>>> checks{
        {"elementary solutions", elementary_solutions},
        {"one-instanton coefficient", one_instanton},
        {"three-route agreement", three_routes},
        {"mode matrices vs quadrature", mode_oracle},
        {"rank-one identity", rank_one},
        {"Xi Delta^2 factorization", xi_delta_factorization},
        {"Z_bif reflection/diagonal", z_bif_identities},
        {"sigma-form residual", ode_residuals},
        {"PIII(D8) residual", painleve_three},
        {"quasi-periodicity re-indexing", quasi_periodicity},
        {"Maya/Young bijection", maya_bijection},
        {"branch independence", branch_independence},
    };
    int failed = 0;
    for (size_t i = 0; i < checks.size(); ++i) {
        Outcome o;
        try {
            o = checks[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %2zu %-32s %s\n", o.pass ? "PASS" : "FAIL", i + 1, checks[i].first, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d/%zu passed\n", int(checks.size()) - failed, checks.size());
    return failed == 0 ? 0 : 1;
}
