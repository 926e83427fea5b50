#pragma once

#include <array>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "types.hpp"

namespace painleve {

namespace detail {

inline bool is_nonpositive_integer(cplx z)
{
    if (z.real() > 0.5) return false;
    double r = std::round(z.real());
    return std::abs(z - cplx(r, 0.0)) < 1e-14 * std::max(1.0, std::abs(r));
}

inline std::string format_cplx(cplx z)
{
    return "(" + std::to_string(z.real()) + (z.imag() < 0 ? " - " : " + ") + std::to_string(std::abs(z.imag())) + "i)";
}

// Lanczos g=7, n=9; valid for Re z >= 1/2.
inline cplx ln_gamma_lanczos(cplx z)
{
    static constexpr std::array<double, 9> c{0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                             771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                             -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    constexpr double g = 7.0;
    z -= 1.0;
    cplx x = c[0];
    for (int k = 1; k < 9; ++k) x += c[k] / (z + double(k));
    cplx tt = z + g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(tt) - tt + std::log(x);
}

}  // namespace detail

// Principal branch of log Gamma: continuous off the negative real axis, real for z > 0,
// and satisfying ln_gamma(z+1) = ln_gamma(z) + log(z).
inline cplx ln_gamma(cplx z)
{
    if (detail::is_nonpositive_integer(z)) throw PoleError("ln_gamma: pole at " + detail::format_cplx(z));
    if (z.real() >= 0.5) return detail::ln_gamma_lanczos(z);
    if (std::abs(z.imag()) > 50.0) {
        // Reflection would overflow sin(pi z); walk right with the recurrence instead.
        int m = int(std::ceil(0.5 - z.real()));
        cplx acc = detail::ln_gamma_lanczos(z + double(m));
        for (int k = 0; k < m; ++k) acc -= std::log(z + double(k));
        return acc;
    }
    // Reflection, with the imaginary part shifted onto the principal branch.
    double branch = std::copysign(2.0 * pi, z.imag()) * std::floor(0.5 * z.real() + 0.25);
    return cplx(std::log(pi), branch) - std::log(std::sin(pi * z)) - detail::ln_gamma_lanczos(1.0 - z);
}

inline cplx gamma(cplx z) { return std::exp(ln_gamma(z)); }

inline cplx rgamma(cplx z)
{
    if (detail::is_nonpositive_integer(z)) return 0.0;
    return std::exp(-ln_gamma(z));
}

inline cplx pochhammer(cplx alpha, int k)
{
    if (k < 0) throw DomainError("pochhammer: negative order");
    cplx p = 1.0;
    for (int i = 0; i < k; ++i) p *= alpha + double(i);
    return p;
}

// j_sigma(z) = sum_k z^k / (k! Gamma(2 sigma + 1 + k)) = z^{-sigma} I_{2 sigma}(2 sqrt z).
inline cplx j_sigma(cplx sigma, cplx z)
{
    cplx a = 2.0 * sigma + 1.0;
    if (detail::is_nonpositive_integer(a)) throw PoleError("j_sigma: 2*sigma+1 is a non-positive integer, sigma = " + detail::format_cplx(sigma));
    cplx term = rgamma(a);
    CompensatedSum sum;
    sum.add(term);
    int small = 0;
    for (int k = 0; k < 200; ++k) {
        term *= z / (double(k + 1) * (a + double(k)));
        sum.add(term);
        if (std::abs(term) <= 1e-18 * std::abs(sum.value())) {
            if (++small == 2) return sum.value();
        } else {
            small = 0;
        }
    }
    throw ConvergenceError("j_sigma: series did not converge in 200 terms at z = " + detail::format_cplx(z));
}

// log of G(z+n)/G(z), using G(z+1) = Gamma(z) G(z) only.
inline cplx log_barnes_g_ratio(cplx z, int n)
{
    cplx acc = 0.0;
    if (n >= 0) {
        for (int k = 0; k < n; ++k) acc += ln_gamma(z + double(k));
    } else {
        for (int k = n; k < 0; ++k) acc -= ln_gamma(z + double(k));
    }
    return acc;
}

inline cplx barnes_g_ratio(cplx z, int n) { return std::exp(log_barnes_g_ratio(z, n)); }

// Upsilon(nu|Q) = Gamma(1+nu)^Q G(1+nu)/G(1+nu+Q); rational in nu.
inline cplx upsilon(cplx nu, int Q)
{
    return std::exp(double(Q) * ln_gamma(1.0 + nu) - log_barnes_g_ratio(1.0 + nu, Q));
}

}  // namespace painleve
