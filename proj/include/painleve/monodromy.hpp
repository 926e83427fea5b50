#pragma once

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "special_functions.hpp"
#include "types.hpp"

namespace painleve {

inline constexpr double lattice_tolerance = 1e-8;

class MonodromyParams {
public:
    MonodromyParams(cplx sigma, cplx eta) : sigma_(sigma), eta_(eta)
    {
        cplx two_s = 2.0 * sigma;
        if (std::abs(two_s - std::round(two_s.real())) < lattice_tolerance)
            throw DegenerateParameterError("sigma on half-integer lattice: sigma = " + detail::format_cplx(sigma));
    }

    static MonodromyParams from_nu(cplx nu, cplx eta) { return {nu - 0.5, eta}; }

    cplx sigma() const { return sigma_; }
    cplx eta() const { return eta_; }
    cplx nu() const { return sigma_ + 0.5; }

private:
    cplx sigma_;
    cplx eta_;
};

inline Matrix2 pauli_x() { return (Matrix2() << 0.0, 1.0, 1.0, 0.0).finished(); }
inline Matrix2 pauli_y() { return (Matrix2() << 0.0, -I, I, 0.0).finished(); }
inline Matrix2 pauli_z() { return (Matrix2() << 1.0, 0.0, 0.0, -1.0).finished(); }

// diag(e^{x}, e^{-x}) = exp(x sigma_z)
inline Matrix2 exp_sigma_z(cplx x)
{
    return (Matrix2() << std::exp(x), 0.0, 0.0, std::exp(-x)).finished();
}

inline Matrix2 connection_matrix(const MonodromyParams& p)
{
    cplx s = p.sigma(), e = p.eta();
    cplx den = std::sin(2.0 * pi * s);
    if (std::abs(den) < 1e-10) throw DegenerateParameterError("connection_matrix: sin(2 pi sigma) vanishes");
    Matrix2 E;
    E << std::sin(2.0 * pi * e), -I * std::sin(2.0 * pi * (e + s)),
        I * std::sin(2.0 * pi * (e - s)), std::sin(2.0 * pi * e);
    return E / den;
}

inline Matrix2 stokes_matrix(const MonodromyParams& p)
{
    Matrix2 S;
    S << 1.0, -2.0 * I * std::cos(2.0 * pi * p.sigma()), 0.0, 1.0;
    return S;
}

inline Matrix2 m0(const MonodromyParams& p)
{
    return I * pauli_x() * stokes_matrix(p).inverse();
}

// Diagonalizes M0: U M0 U^{-1} = exp(2 pi i nu sigma_z).
inline Matrix2 diagonalizer_u(const MonodromyParams& p)
{
    cplx a = pi * (p.sigma() + 0.25);
    Matrix2 U;
    U << std::exp(-I * a), std::exp(I * a), std::exp(I * a), -std::exp(-I * a);
    return U / std::sqrt(2.0 * std::sin(2.0 * pi * p.sigma()));
}

// The formal monodromy exponent nu sigma_z.
inline Matrix2 exponent_s(const MonodromyParams& p) { return p.nu() * pauli_z(); }

// sigma -> 1/2 - sigma, eta -> -eta; relates this normalization to the other common one.
inline MonodromyParams backlund_relabel(const MonodromyParams& p) { return {0.5 - p.sigma(), -p.eta()}; }

struct MonodromyCheck {
    double det_e = 0;             // |det E - 1|
    double det_m0 = 0;            // |det M0 - 1|
    double trace_m0 = 0;          // |tr M0 + 2 cos 2 pi sigma|
    double cyclic_relation = 0;   // max |S S^T - E S^T S E^{-1}|
    double conjugation = 0;       // max |sigma_x E sigma_x - S^{-1} E S^T|
    double diagonalization = 0;   // max |U M0 U^{-1} - e^{2 pi i nu sigma_z}|
    double unfolded_m0 = 0;       // max |(-M0^2)^{-1} - S S^T|
    double infinity_m0 = 0;       // max |E^{-1} M0 E - sigma_x M0 sigma_x|

    double worst() const
    {
        return std::max({det_e, det_m0, trace_m0, cyclic_relation, conjugation, diagonalization, unfolded_m0, infinity_m0});
    }
};

inline MonodromyCheck check_monodromy(const MonodromyParams& p)
{
    Matrix2 E = connection_matrix(p), S = stokes_matrix(p), M = m0(p), U = diagonalizer_u(p);
    Matrix2 sx = pauli_x();
    MonodromyCheck c;
    c.det_e = std::abs(E.determinant() - 1.0);
    c.det_m0 = std::abs(M.determinant() - 1.0);
    c.trace_m0 = std::abs(M.trace() + 2.0 * std::cos(2.0 * pi * p.sigma()));
    c.cyclic_relation = (S * S.transpose() - E * S.transpose() * S * E.inverse()).cwiseAbs().maxCoeff();
    c.conjugation = (sx * E * sx - S.inverse() * E * S.transpose()).cwiseAbs().maxCoeff();
    c.diagonalization = (U * M * U.inverse() - exp_sigma_z(2.0 * pi * I * p.nu())).cwiseAbs().maxCoeff();
    c.unfolded_m0 = ((-M * M).inverse() - S * S.transpose()).cwiseAbs().maxCoeff();
    c.infinity_m0 = (E.inverse() * M * E - sx * M * sx).cwiseAbs().maxCoeff();
    return c;
}

}  // namespace painleve
