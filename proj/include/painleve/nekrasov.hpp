#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "partitions.hpp"
#include "special_functions.hpp"
#include "types.hpp"

namespace painleve {

struct SeriesTruncation {
    int weight_cutoff = 6;
    int charge_cutoff = 2;

    void validate() const
    {
        if (weight_cutoff < 0 || charge_cutoff < 0) throw DomainError("series truncation: cutoffs must be non-negative");
    }
};

// ---------------------------------------------------------------------------
// Power series in t with complex exponents

// One term c * t^exponent. `sector` is the charge label of the generating sum
// (Q for the Maya series, n for the dual sum) and `weight` the number of boxes.
struct SeriesTerm {
    int sector = 0;
    int weight = 0;
    cplx exponent;
    cplx coefficient;
};

inline cplx principal_power(cplx t, cplx e)
{
    if (e == 0.0) return 1.0;
    if (t == 0.0) return 0.0;
    return std::exp(e * std::log(t));
}

class PowerSeries {
public:
    PowerSeries() = default;
    explicit PowerSeries(std::vector<SeriesTerm> terms) : terms_(std::move(terms)) {}

    const std::vector<SeriesTerm>& terms() const { return terms_; }

    cplx operator()(cplx t) const { return moment(t, 0); }

    // sum c e^m t^e, i.e. (t d/dt)^m applied term by term.
    cplx moment(cplx t, int m) const
    {
        CompensatedSum s;
        for (const auto& term : terms_) {
            cplx w = term.coefficient * principal_power(t, term.exponent);
            for (int i = 0; i < m; ++i) w *= term.exponent;
            s.add(w);
        }
        return s.value();
    }

    // Merge terms with equal (sector, weight), keeping first-appearance order.
    PowerSeries aggregated() const
    {
        std::vector<SeriesTerm> out;
        std::map<std::pair<int, int>, size_t> where;
        std::vector<CompensatedSum> sums;
        for (const auto& term : terms_) {
            auto key = std::make_pair(term.sector, term.weight);
            auto it = where.find(key);
            if (it == where.end()) {
                where.emplace(key, out.size());
                out.push_back(term);
                sums.emplace_back();
                sums.back().add(term.coefficient);
            } else {
                sums[it->second].add(term.coefficient);
            }
        }
        for (size_t i = 0; i < out.size(); ++i) out[i].coefficient = sums[i].value();
        return PowerSeries(std::move(out));
    }

private:
    std::vector<SeriesTerm> terms_;
};

// ---------------------------------------------------------------------------
// Bifundamental factors

namespace detail {

inline void check_factor(cplx f, cplx nu, const char* what, const YoungDiagram& a, const YoungDiagram& b)
{
    if (std::abs(f) < 1e-10 * std::max(1.0, std::abs(nu)))
        throw DenominatorZeroError(std::string(what) + ": vanishing factor for diagrams " + a.str() + ", " + b.str());
}

inline cplx z_bif_impl(cplx nu, const YoungDiagram& yp, const YoungDiagram& ym, bool check)
{
    cplx out = 1.0;
    yp.for_each_box([&](int i, int j) {
        cplx f = nu + 1.0 + double(arm(yp, i, j) + leg(ym, i, j));
        if (check) check_factor(f, nu, "Z_bif", yp, ym);
        out *= f;
    });
    ym.for_each_box([&](int i, int j) {
        cplx f = nu - 1.0 - double(arm(ym, i, j) + leg(yp, i, j));
        if (check) check_factor(f, nu, "Z_bif", yp, ym);
        out *= f;
    });
    return out;
}

}  // namespace detail

inline cplx z_bif(cplx nu, const YoungDiagram& y_plus, const YoungDiagram& y_minus)
{
    return detail::z_bif_impl(nu, y_plus, y_minus, false);
}

// prod over s, s' of Z_bif(x (s - s') | Y^{s'}, Y^s)
inline cplx z_bif_product(cplx x, const YoungDiagram& yp, const YoungDiagram& ym, bool check = false)
{
    return detail::z_bif_impl(0.0, yp, yp, check) * detail::z_bif_impl(2.0 * x, ym, yp, check) *
           detail::z_bif_impl(-2.0 * x, yp, ym, check) * detail::z_bif_impl(0.0, ym, ym, check);
}

// ---------------------------------------------------------------------------
// Instanton and dual sums

// c_k with z_inst = sum_k c_k t^k
inline std::vector<cplx> z_inst_coefficients(cplx nu, int W)
{
    if (W < 0) throw DomainError("z_inst: weight cutoff must be non-negative");
    std::vector<cplx> c;
    for (int w = 0; w <= W; ++w) {
        CompensatedSum s;
        for (const auto& [yp, ym] : pairs_of_weight(w)) s.add(1.0 / z_bif_product(nu, yp, ym, true));
        c.push_back(s.value());
    }
    return c;
}

inline cplx z_inst(cplx t, cplx nu, const SeriesTruncation& trunc)
{
    trunc.validate();
    auto c = z_inst_coefficients(nu, trunc.weight_cutoff);
    CompensatedSum s;
    cplx tk = 1.0;
    for (cplx ck : c) {
        s.add(ck * tk);
        tk *= t;
    }
    return s.value();
}

// C(nu+n)/C(nu) with C(nu) = 1/(G(1+2nu) G(1-2nu)).
inline cplx dual_ratio(cplx nu, int n)
{
    return std::exp(-log_barnes_g_ratio(1.0 + 2.0 * nu, 2 * n) - log_barnes_g_ratio(1.0 - 2.0 * nu, -2 * n));
}

// Terms of Z_dual/(C(nu) t^{nu^2}); exponent 2 nu n + n^2 + k.
inline PowerSeries z_dual_series(cplx nu, cplx eta, const SeriesTruncation& trunc)
{
    trunc.validate();
    std::vector<SeriesTerm> terms;
    for (int n = -trunc.charge_cutoff; n <= trunc.charge_cutoff; ++n) {
        cplx pref = std::exp(4.0 * pi * I * double(n) * eta) * dual_ratio(nu, n);
        auto c = z_inst_coefficients(nu + double(n), trunc.weight_cutoff);
        for (int k = 0; k <= trunc.weight_cutoff; ++k)
            terms.push_back({n, k, 2.0 * nu * double(n) + double(n * n + k), pref * c[size_t(k)]});
    }
    return PowerSeries(std::move(terms));
}

inline cplx z_dual(cplx t, cplx nu, cplx eta, const SeriesTruncation& trunc) { return z_dual_series(nu, eta, trunc)(t); }

// ---------------------------------------------------------------------------
// Maya-diagram coefficients

struct ColoredPosition {
    HalfInteger x;
    int s = 1;
};

struct ColoredSets {
    std::vector<ColoredPosition> particles;
    std::vector<ColoredPosition> holes;
};

inline ColoredSets colored_sets(const MayaDiagram& m_plus, const MayaDiagram& m_minus)
{
    ColoredSets cs;
    for (auto p : m_plus.particles()) cs.particles.push_back({p, 1});
    for (auto p : m_minus.particles()) cs.particles.push_back({p, -1});
    for (auto h : m_plus.holes()) cs.holes.push_back({h, 1});
    for (auto h : m_minus.holes()) cs.holes.push_back({h, -1});
    return cs;
}

inline ColoredSets colored_sets(const ChargedTriple& tr)
{
    return colored_sets(maya_from_young(tr.y_plus, tr.Q), maya_from_young(tr.y_minus, -tr.Q));
}

// x_{p;s} = p - s nu
inline cplx shifted_momentum(cplx nu, ColoredPosition c) { return c.x.value() - double(c.s) * nu; }

inline cplx xi_coeff(cplx nu, const std::vector<ColoredPosition>& p, const std::vector<ColoredPosition>& h)
{
    if (p.size() != h.size()) throw DomainError("xi_coeff: particle and hole counts differ");
    int Q = 0;
    for (auto c : p)
        if (c.s > 0) ++Q;
    for (auto c : h)
        if (c.s > 0) --Q;
    cplx prod = 1.0;
    for (auto c : p) {
        int k = (c.x.twice - 1) / 2;  // p - 1/2
        cplx poch = pochhammer(1.0 - 2.0 * double(c.s) * nu, k);
        if (std::abs(poch) < 1e-300) throw PoleError("xi_coeff: vanishing Pochhammer symbol");
        prod *= std::tgamma(double(k + 1)) * poch;
    }
    for (auto c : h) {
        int k = (-c.x.twice - 1) / 2;  // q - 1/2
        cplx poch = pochhammer(2.0 * double(c.s) * nu, k + 1);
        if (std::abs(poch) < 1e-300) throw PoleError("xi_coeff: vanishing Pochhammer symbol");
        prod *= std::tgamma(double(k + 1)) * poch;
    }
    cplx gamma_ratio = std::exp(2.0 * double(Q) * (ln_gamma(1.0 + 2.0 * nu) - ln_gamma(1.0 - 2.0 * nu)));
    double sign = (Q % 2 == 0) ? 1.0 : -1.0;
    return sign * gamma_ratio / (prod * prod);
}

inline cplx delta_coeff(cplx nu, const std::vector<ColoredPosition>& p, const std::vector<ColoredPosition>& h)
{
    if (p.size() != h.size()) throw DomainError("delta_coeff: particle and hole counts differ");
    auto diff = [&](ColoredPosition a, ColoredPosition b) {
        cplx d = shifted_momentum(nu, a) - shifted_momentum(nu, b);
        if (std::abs(d) < 1e-12) throw DenominatorZeroError("delta_coeff: coincident shifted momenta");
        return d;
    };
    cplx num = 1.0, den = 1.0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j) num *= diff(p[i], p[j]);
    for (size_t i = 0; i < h.size(); ++i)
        for (size_t j = i + 1; j < h.size(); ++j) num *= diff(h[j], h[i]);
    for (auto a : p)
        for (auto b : h) den *= diff(a, b);
    return num / den;
}

inline cplx xi_delta_squared(cplx nu, const ColoredSets& cs)
{
    cplx d = delta_coeff(nu, cs.particles, cs.holes);
    return xi_coeff(nu, cs.particles, cs.holes) * d * d;
}

// Terms of tau_III/t^{nu^2}: e^{-4 pi i eta Q} Xi Delta^2 t^{Q^2 - 2 nu Q + |Y+| + |Y-|}, one per configuration.
inline PowerSeries maya_series(cplx nu, cplx eta, const SeriesTruncation& trunc)
{
    trunc.validate();
    std::vector<SeriesTerm> terms;
    for_each_triple(trunc.weight_cutoff, trunc.charge_cutoff, [&](const ChargedTriple& tr) {
        cplx c = std::exp(-4.0 * pi * I * eta * double(tr.Q)) * xi_delta_squared(nu, colored_sets(tr));
        int k = tr.weight();
        terms.push_back({tr.Q, k, double(tr.Q * tr.Q + k) - 2.0 * nu * double(tr.Q), c});
    });
    return PowerSeries(std::move(terms));
}

inline cplx tau_series_maya(cplx t, cplx sigma, cplx eta, const SeriesTruncation& trunc)
{
    return maya_series(sigma + 0.5, eta, trunc)(t);
}

// ---------------------------------------------------------------------------
// Factorization identities

// Factorized function of the particle/hole positions of two Maya diagrams.
inline cplx z_bif_tilde(cplx nu, const MayaDiagram& m_plus, const MayaDiagram& m_minus)
{
    auto q_of = [](HalfInteger h) { return -h.value(); };  // hole at -q
    auto half_index = [](double v) { return int(std::lround(v)); };
    cplx out = 1.0;
    for (auto h : m_plus.holes()) out *= pochhammer(-nu, half_index(q_of(h) + 0.5));
    for (auto h : m_minus.holes()) out *= pochhammer(nu + 1.0, half_index(q_of(h) - 0.5));
    for (auto p : m_minus.particles()) out *= pochhammer(-nu, half_index(p.value() + 0.5));
    for (auto p : m_plus.particles()) out *= pochhammer(nu + 1.0, half_index(p.value() - 0.5));
    cplx num = 1.0, den = 1.0;
    for (auto h : m_plus.holes())
        for (auto p : m_minus.particles()) num *= nu - q_of(h) - p.value();
    for (auto h : m_minus.holes())
        for (auto p : m_plus.particles()) num *= nu + p.value() + q_of(h);
    for (auto hm : m_minus.holes())
        for (auto hp : m_plus.holes()) den *= nu - q_of(hp) + q_of(hm);
    for (auto pm : m_minus.particles())
        for (auto pp : m_plus.particles()) den *= nu + pp.value() - pm.value();
    if (std::abs(den) < 1e-300) throw DenominatorZeroError("z_bif_tilde: vanishing denominator");
    return out * num / den;
}

struct FactorizationReport {
    int tilde_count = 0;
    int xi_delta_count = 0;
    double tilde_modulus_error = 0;  // | |Z~| - |Z/Upsilon| | relative
    double xi_delta_error = 0;          // exact, sign-sensitive
    // For real nu: every Xi Delta^2 has sign (-1)^Q (and the other side agrees).
    bool xi_delta_sign_is_minus_one_to_q = true;
};

// Checks both factorizations over every configuration with weight <= W and |Q| <= Qmax.
inline FactorizationReport check_factorization_identities(cplx nu, int W, int Qmax)
{
    FactorizationReport r;
    for (int w = 0; w <= W; ++w) {
        auto pairs = pairs_of_weight(w);
        for (const auto& [yp, ym] : pairs)
            for (int qp = -Qmax; qp <= Qmax; ++qp)
                for (int qm = -Qmax; qm <= Qmax; ++qm) {
                    cplx lhs = z_bif_tilde(nu, maya_from_young(yp, qp), maya_from_young(ym, qm));
                    cplx rhs = z_bif(nu + double(qp - qm), yp, ym) / upsilon(nu, qp - qm);
                    r.tilde_modulus_error = std::max(r.tilde_modulus_error, rel_diff(std::abs(lhs), std::abs(rhs)));
                    ++r.tilde_count;
                }
        for (int Q = -Qmax; Q <= Qmax; ++Q)
            for (const auto& [yp, ym] : pairs) {
                cplx lhs = xi_delta_squared(nu, colored_sets(ChargedTriple{yp, ym, Q}));
                cplx gamma_ratio = std::exp(2.0 * double(Q) * (ln_gamma(1.0 + 2.0 * nu) - ln_gamma(1.0 - 2.0 * nu)));
                cplx rhs = gamma_ratio * upsilon(2.0 * nu, -2 * Q) * upsilon(-2.0 * nu, 2 * Q) /
                           z_bif_product(nu - double(Q), yp, ym);
                r.xi_delta_error = std::max(r.xi_delta_error, rel_diff(lhs, rhs));
                ++r.xi_delta_count;
                if (nu.imag() == 0.0) {
                    double expected = (Q % 2 == 0) ? 1.0 : -1.0;
                    if (lhs.real() * expected <= 0 || rhs.real() * expected <= 0) r.xi_delta_sign_is_minus_one_to_q = false;
                }
            }
    }
    return r;
}

}  // namespace painleve
