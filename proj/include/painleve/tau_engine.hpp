#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "kernel.hpp"
#include "monodromy.hpp"
#include "nekrasov.hpp"
#include "types.hpp"

namespace painleve {

enum class Method { fredholm, maya, nekrasov };

inline const char* method_name(Method m)
{
    switch (m) {
    case Method::fredholm: return "fredholm";
    case Method::maya: return "maya";
    case Method::nekrasov: return "nekrasov";
    }
    return "?";
}

struct Truncation {
    int modes = 12;          // N for the Fredholm route
    int weight_cutoff = 6;   // W for the series routes
    int charge_cutoff = 2;   // Qmax for the series routes

    SeriesTruncation series() const { return {weight_cutoff, charge_cutoff}; }

    // The truncation used for est_error.
    Truncation larger(Method m) const
    {
        Truncation t = *this;
        if (m == Method::fredholm)
            t.modes = std::min(64, std::max(2 * modes, modes + 1));
        else {
            t.weight_cutoff += 2;
            t.charge_cutoff += 1;
        }
        return t;
    }
};

inline constexpr double reliable_region = 0.5;

struct TauValue {
    cplx t;
    cplx tau;
    Method method = Method::fredholm;
    Truncation truncation;
    double est_error = 0;
    std::vector<std::string> warnings;
};

// ---------------------------------------------------------------------------
// Evaluators of the normalized tau function t^{-nu^2} tau_III(t)

class FredholmTau {
public:
    FredholmTau(const MonodromyParams& p, int N, BranchChoice b = {})
        : nu_(p.nu()), N_(N), A_(mode_matrix_a(p, N, b)), Dbare_(mode_matrix_d_bare(p, N, b))
    {
    }

    cplx operator()(cplx t) const
    {
        if (t == 0.0 || N_ == 0) return 1.0;
        return fredholm_det({A_, apply_t_powers(Dbare_, nu_, t), N_});
    }

    int modes() const { return N_; }

private:
    cplx nu_;
    int N_;
    MatrixX A_;
    MatrixX Dbare_;
};

class SeriesTau {
public:
    SeriesTau(const MonodromyParams& p, Method m, const SeriesTruncation& tr)
        : series_(m == Method::maya ? maya_series(p.nu(), p.eta(), tr).aggregated() : z_dual_series(p.nu(), p.eta(), tr))
    {
    }

    cplx operator()(cplx t) const { return series_(t); }
    const PowerSeries& series() const { return series_; }

private:
    PowerSeries series_;
};

using TauFunction = std::function<cplx(cplx)>;

inline TauFunction make_tau_function(const MonodromyParams& p, Method m, const Truncation& tr)
{
    if (m == Method::fredholm) return FredholmTau(p, tr.modes);
    return SeriesTau(p, m, tr.series());
}

inline TauValue tau(cplx t, const MonodromyParams& p, Method m, const Truncation& tr, bool allow_outside_region = false)
{
    TauValue v;
    v.t = t;
    v.method = m;
    v.truncation = tr;
    if (std::abs(t) > reliable_region)
        v.warnings.push_back(allow_outside_region ? "t outside the reliable region |t| <= 0.5 (override set)"
                                                  : "t outside the reliable region |t| <= 0.5; truncation error may be large");
    if (t.imag() != 0.0 || t.real() < 0.0)
        v.warnings.push_back("complex t: principal branches, continuity across arg t = pi is not tracked");
    v.tau = make_tau_function(p, m, tr)(t);
    cplx bigger = make_tau_function(p, m, tr.larger(m))(t);
    if (!is_finite(v.tau) || !is_finite(bigger))
        throw NumericalError(std::string("tau: non-finite value from the ") + method_name(m) + " route");
    v.est_error = std::abs(v.tau - bigger);
    return v;
}

// Doubles N until successive determinants differ by less than tol, or N reaches 64.
inline TauValue fredholm_adaptive(cplx t, const MonodromyParams& p, double tol, int N0 = 4)
{
    int N = std::max(1, N0);
    cplx prev = FredholmTau(p, N)(t);
    while (N < 64) {
        int next = std::min(64, 2 * N);
        cplx cur = FredholmTau(p, next)(t);
        double diff = std::abs(cur - prev);
        N = next;
        prev = cur;
        if (diff < tol) {
            TauValue v{t, cur, Method::fredholm, {N, 0, 0}, diff, {}};
            return v;
        }
    }
    throw ConvergenceError("fredholm_adaptive: no convergence by N = 64");
}

// ---------------------------------------------------------------------------
// zeta and its derivatives

enum class DiffScheme {
    automatic,  // analytic for series routes, circle for Fredholm
    analytic,   // term-by-term differentiation of the series
    stencil5,   // nested real-axis 5-point stencils, 4th order in h
    circle,     // Cauchy integral on a circle of radius h around t (16 nodes)
};

// zeta = t d/dt ln tau_III and its first three t-derivatives.
struct ZetaJet {
    cplx zeta, d1, d2, d3;
};

namespace detail {

// Cumulants: derivatives of ln F from ratios v_k = F^{(k)}/F (k = 1..4).
inline std::array<cplx, 4> log_derivatives(const std::array<cplx, 4>& v)
{
    cplx v1 = v[0], v2 = v[1], v3 = v[2], v4 = v[3];
    return {v1, v2 - v1 * v1, v3 - 3.0 * v1 * v2 + 2.0 * v1 * v1 * v1,
            v4 - 4.0 * v1 * v3 - 3.0 * v2 * v2 + 12.0 * v1 * v1 * v2 - 6.0 * v1 * v1 * v1 * v1};
}

inline ZetaJet jet_from_theta(cplx nu, cplx t, const std::array<cplx, 4>& L)
{
    // L[k] = theta^{k+1} ln S; zeta = nu^2 + L[0], theta^k zeta = L[k].
    cplx z1 = L[1], z2 = L[2], z3 = L[3];
    return {nu * nu + L[0], z1 / t, (z2 - z1) / (t * t), (z3 - 3.0 * z2 + 2.0 * z1) / (t * t * t)};
}

inline ZetaJet jet_from_t_derivatives(cplx nu, cplx t, const std::array<cplx, 4>& f)
{
    // l_k: t-derivatives of ln tau_full = nu^2 ln t + ln F.
    cplx n2 = nu * nu;
    cplx l1 = f[0] + n2 / t, l2 = f[1] - n2 / (t * t), l3 = f[2] + 2.0 * n2 / (t * t * t),
         l4 = f[3] - 6.0 * n2 / (t * t * t * t);
    return {t * l1, l1 + t * l2, 2.0 * l2 + t * l3, 3.0 * l3 + t * l4};
}

}  // namespace detail

inline ZetaJet zeta_jet_analytic(const PowerSeries& s, cplx nu, cplx t)
{
    cplx S0 = s.moment(t, 0);
    if (std::abs(S0) == 0.0) throw NumericalError("zeta: tau vanishes");
    std::array<cplx, 4> u;
    for (int m = 1; m <= 4; ++m) u[size_t(m - 1)] = s.moment(t, m) / S0;
    return detail::jet_from_theta(nu, t, detail::log_derivatives(u));
}

inline ZetaJet zeta_jet_circle(const TauFunction& F, cplx nu, cplx t, double h, int nodes = 16)
{
    std::array<cplx, 5> acc{};
    for (int j = 0; j < nodes; ++j) {
        cplx w = std::polar(1.0, 2.0 * pi * (j + 0.5) / nodes);
        cplx val = F(t + h * w);
        cplx wk = 1.0;
        for (int k = 0; k <= 4; ++k) {
            acc[size_t(k)] += val / wk;
            wk *= w;
        }
    }
    cplx F0 = acc[0] / double(nodes);
    if (std::abs(F0) == 0.0) throw NumericalError("zeta: tau vanishes");
    std::array<cplx, 4> v;
    double fact = 1.0, hk = 1.0;
    for (int k = 1; k <= 4; ++k) {
        fact *= k;
        hk *= h;
        v[size_t(k - 1)] = acc[size_t(k)] / double(nodes) * fact / hk / F0;
    }
    return detail::jet_from_t_derivatives(nu, t, detail::log_derivatives(v));
}

// Nested 5-point stencils on the lattice t + j h, |j| <= 8.
inline ZetaJet zeta_jet_stencil(const TauFunction& F, cplx nu, double t, double h)
{
    constexpr int K = 8;
    if (t - K * h <= 0) throw DomainError("zeta: stencil reaches t <= 0; reduce the step");
    cplx F0 = F(t);
    std::vector<cplx> L(2 * K + 1);
    for (int j = -K; j <= K; ++j) {
        double tj = t + j * h;
        // log of the ratio keeps the branch local
        L[size_t(j + K)] = nu * nu * std::log(tj) + std::log(F(tj) / F0);
    }
    auto diff = [&](const std::vector<cplx>& f, int half) {
        // f covers [-half, half]; result covers [-half+2, half-2]
        std::vector<cplx> g(size_t(2 * (half - 2) + 1));
        for (int j = -(half - 2); j <= half - 2; ++j) {
            auto at = [&](int k) { return f[size_t(k + half)]; };
            g[size_t(j + half - 2)] = (-at(j + 2) + 8.0 * at(j + 1) - 8.0 * at(j - 1) + at(j - 2)) / (12.0 * h);
        }
        return g;
    };
    auto lp = diff(L, K);  // half = 6
    std::vector<cplx> z(lp.size());
    for (int j = -6; j <= 6; ++j) z[size_t(j + 6)] = (t + j * h) * lp[size_t(j + 6)];
    auto z1 = diff(z, 6);   // half = 4
    auto z2 = diff(z1, 4);  // half = 2
    auto z3 = diff(z2, 2);  // half = 0
    return {z[6], z1[4], z2[2], z3[0]};
}

inline double default_step(double t) { return std::max(1e-3, t / 100.0); }

inline ZetaJet zeta_jet(double t, const MonodromyParams& p, Method m, const Truncation& tr, double h,
                        DiffScheme scheme = DiffScheme::automatic)
{
    if (!(t > 0)) throw DomainError("zeta: t must be positive");
    if (!(h > 0) || h >= t / 4) throw DomainError("zeta: step too large (need 0 < h < t/4)");
    if (scheme == DiffScheme::automatic) scheme = (m == Method::fredholm) ? DiffScheme::circle : DiffScheme::analytic;
    if (scheme == DiffScheme::analytic) {
        if (m == Method::fredholm) throw DomainError("zeta: analytic differentiation needs a series route");
        return zeta_jet_analytic(SeriesTau(p, m, tr.series()).series(), p.nu(), t);
    }
    TauFunction F = make_tau_function(p, m, tr);
    if (scheme == DiffScheme::circle) return zeta_jet_circle(F, p.nu(), t, h);
    return zeta_jet_stencil(F, p.nu(), t, h);
}

inline cplx zeta(double t, const MonodromyParams& p, Method m, const Truncation& tr, double h,
                 DiffScheme scheme = DiffScheme::stencil5)
{
    if (scheme != DiffScheme::stencil5) return zeta_jet(t, p, m, tr, h, scheme).zeta;
    if (!(t > 0)) throw DomainError("zeta: t must be positive");
    if (!(h > 0) || h >= t / 4) throw DomainError("zeta: step too large (need 0 < h < t/4)");
    TauFunction F = make_tau_function(p, m, tr);
    cplx F0 = F(t);
    auto L = [&](double x) { return p.nu() * p.nu() * std::log(x) + std::log(F(x) / F0); };
    return t * (-L(t + 2 * h) + 8.0 * L(t + h) - 8.0 * L(t - h) + L(t - 2 * h)) / (12.0 * h);
}

// |(t zeta'')^2 - 4 zeta'^2 (zeta - t zeta') + 4 zeta'|
inline double sigma_form_residual(const ZetaJet& j, double t)
{
    cplx a = t * j.d2;
    return std::abs(a * a - 4.0 * j.d1 * j.d1 * (j.zeta - t * j.d1) + 4.0 * j.d1);
}

inline double ode_residual(double t, const MonodromyParams& p, Method m, const Truncation& tr, double h,
                           DiffScheme scheme = DiffScheme::automatic)
{
    return sigma_form_residual(zeta_jet(t, p, m, tr, h, scheme), t);
}

struct PainleveQ {
    cplx q, q_t, q_tt;
    double residual = 0;  // |q_tt - (q_t^2/q - q_t/t + 2 q^2/t^2 - 2/t)|
    bool near_zero_q = false;
};

inline PainleveQ painleve_q_from_jet(const ZetaJet& j, double t)
{
    PainleveQ r;
    r.q = -t * j.d1;
    r.q_t = -j.d1 - t * j.d2;
    r.q_tt = -2.0 * j.d2 - t * j.d3;
    r.near_zero_q = std::abs(r.q) < 1e-12;
    cplx rhs = r.q_t * r.q_t / r.q - r.q_t / t + 2.0 * r.q * r.q / (t * t) - 2.0 / t;
    r.residual = std::abs(r.q_tt - rhs);
    return r;
}

inline PainleveQ painleve_q(double t, const MonodromyParams& p, Method m, const Truncation& tr, double h,
                            DiffScheme scheme = DiffScheme::automatic)
{
    return painleve_q_from_jet(zeta_jet(t, p, m, tr, h, scheme), t);
}

struct SineGordon {
    cplx u;
    double residual = 0;  // |u_rr + u_r/r + sin u|
};

// u(r) = -i log(-2^6 q(2^{-12} r^4)/r^2)
inline SineGordon sine_gordon_map(double r, const MonodromyParams& p, Method m, const Truncation& tr, double h,
                                  DiffScheme scheme = DiffScheme::automatic)
{
    if (!(r > 0)) throw DomainError("sine_gordon_map: r must be positive");
    double t = std::pow(r, 4) / 4096.0;
    PainleveQ q = painleve_q(t, p, m, tr, std::min(h, t / 5.0), scheme);
    if (std::abs(q.q) < 1e-300) throw NumericalError("sine_gordon_map: q vanishes");
    SineGordon s;
    s.u = -I * std::log(-64.0 * q.q / (r * r));
    double tr1 = 4.0 * t / r, tr2 = 12.0 * t / (r * r);
    cplx g = q.q_t * tr1 / q.q;  // d/dr log q
    cplx u_r = -I * (g - 2.0 / r);
    cplx u_rr = -I * ((q.q_tt * tr1 * tr1 + q.q_t * tr2) / q.q - g * g + 2.0 / (r * r));
    s.residual = std::abs(u_rr + u_r / r + std::sin(s.u));
    return s;
}

// ---------------------------------------------------------------------------
// Periodicity checks

// Max relative defect of e^{4 pi i eta} R(nu,1) * (n-sector terms at nu+1) against
// the (n+1)-sector terms at nu, over the sectors both truncations contain.
inline double quasi_periodicity_term_defect(cplx nu, cplx eta, const SeriesTruncation& tr)
{
    PowerSeries shifted = z_dual_series(nu + 1.0, eta, tr);
    PowerSeries base = z_dual_series(nu, eta, {tr.weight_cutoff, tr.charge_cutoff + 1});
    cplx factor = std::exp(4.0 * pi * I * eta) * dual_ratio(nu, 1);
    cplx shift = (nu + 1.0) * (nu + 1.0) - nu * nu;
    double worst = 0;
    for (const auto& a : shifted.terms()) {
        for (const auto& b : base.terms()) {
            if (b.sector != a.sector + 1 || b.weight != a.weight) continue;
            worst = std::max(worst, rel_diff(factor * a.coefficient, b.coefficient));
            worst = std::max(worst, std::abs(a.exponent + shift - b.exponent));
        }
    }
    return worst;
}

// Spread over the grid of zd(nu+1)/zd(nu) * t^{2nu+1} R(nu,1) e^{4 pi i eta}; ideally identically 1.
inline double quasi_periodicity_spread(const MonodromyParams& p, const std::vector<double>& grid, const SeriesTruncation& tr)
{
    cplx nu = p.nu(), eta = p.eta();
    PowerSeries a = z_dual_series(nu + 1.0, eta, {tr.weight_cutoff, tr.charge_cutoff + 1});
    PowerSeries b = z_dual_series(nu, eta, tr);
    cplx factor = std::exp(4.0 * pi * I * eta) * dual_ratio(nu, 1);
    std::vector<cplx> ratios;
    for (double t : grid) ratios.push_back(a(t) / b(t) * principal_power(t, 2.0 * nu + 1.0) * factor);
    double worst = 0;
    for (cplx r : ratios) worst = std::max(worst, rel_diff(r, ratios.front()));
    return worst;
}

// |tau(eta + 1/2) - tau(eta)| / |tau(eta)| for one route.
inline double eta_periodicity_defect(cplx t, const MonodromyParams& p, Method m, const Truncation& tr)
{
    MonodromyParams q(p.sigma(), p.eta() + 0.5);
    return rel_diff(make_tau_function(p, m, tr)(t), make_tau_function(q, m, tr)(t));
}

// ---------------------------------------------------------------------------
// Cross-validation

struct CrossValidationReport {
    cplx t;
    cplx tau_fredholm, tau_maya, tau_nekrasov;
    double est_fredholm = 0, est_maya = 0, est_nekrasov = 0;
    double diff_fredholm_maya = 0, diff_fredholm_nekrasov = 0, diff_maya_nekrasov = 0;
    double rank_one = 0;
    double tilde_modulus = 0, xi_delta = 0;
    double quadrature_a = 0, quadrature_d = 0;
    double quasi_periodicity = 0;
    double eta_periodicity = 0;
    bool near_resonant = false;  // 2 nu within 1e-2 of an integer: errors amplified, no verdict

    double max_pairwise() const { return std::max({diff_fredholm_maya, diff_fredholm_nekrasov, diff_maya_nekrasov}); }
    double max_relative_est() const
    {
        double s = std::abs(tau_maya);
        return s == 0 ? 0 : std::max({est_fredholm, est_maya, est_nekrasov}) / s;
    }
};

inline double max_entry_diff(const MatrixX& a, const MatrixX& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline CrossValidationReport cross_validate(cplx t, const MonodromyParams& p, const Truncation& tr)
{
    CrossValidationReport r;
    r.t = t;
    cplx two_nu = 2.0 * p.nu();
    r.near_resonant = std::abs(two_nu - std::round(two_nu.real())) < 1e-2;
    TauValue f = tau(t, p, Method::fredholm, tr, true);
    TauValue m = tau(t, p, Method::maya, tr, true);
    TauValue n = tau(t, p, Method::nekrasov, tr, true);
    r.tau_fredholm = f.tau;
    r.tau_maya = m.tau;
    r.tau_nekrasov = n.tau;
    r.est_fredholm = f.est_error;
    r.est_maya = m.est_error;
    r.est_nekrasov = n.est_error;
    r.diff_fredholm_maya = rel_diff(f.tau, m.tau);
    r.diff_fredholm_nekrasov = rel_diff(f.tau, n.tau);
    r.diff_maya_nekrasov = rel_diff(m.tau, n.tau);
    r.rank_one = rank_one_residual(p, 8).worst();
    FactorizationReport lr = check_factorization_identities(p.nu(), 4, 2);
    r.tilde_modulus = lr.tilde_modulus_error;
    r.xi_delta = lr.xi_delta_error;
    int Nq = 6;
    ContinuousKernel ka{KernelKind::a, p, 0.0};
    r.quadrature_a = max_entry_diff(modes_by_quadrature(ka, Nq, default_radius(ka)), mode_matrix_a(p, Nq));
    cplx tq = (t == 0.0) ? cplx(0.05) : t;
    ContinuousKernel kd{KernelKind::d, p, tq};
    r.quadrature_d = max_entry_diff(modes_by_quadrature(kd, Nq, default_radius(kd)), mode_matrix_d(p, tq, Nq));
    r.quasi_periodicity = quasi_periodicity_term_defect(p.nu(), p.eta(), tr.series());
    r.eta_periodicity = eta_periodicity_defect(t, p, Method::maya, tr);
    return r;
}

}  // namespace painleve
