#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "monodromy.hpp"
#include "special_functions.hpp"
#include "types.hpp"

namespace painleve {

// ---------------------------------------------------------------------------
// Continuous kernel

// The j-functions needed for J_sigma and its z-derivative at one point.
struct JValues {
    cplx z;
    cplx s;    // j_sigma
    cplx sh;   // j_{sigma+1/2}
    cplx m;    // j_{-sigma}
    cplx mh;   // j_{-sigma-1/2}
    cplx s1;   // j_{sigma+1}
    cplx mp;   // j_{-sigma+1/2}

    JValues(cplx sigma, cplx z_, bool with_derivative = false) : z(z_)
    {
        s = j_sigma(sigma, z);
        sh = j_sigma(sigma + 0.5, z);
        m = j_sigma(-sigma, z);
        mh = j_sigma(-sigma - 0.5, z);
        if (with_derivative) {
            s1 = j_sigma(sigma + 1.0, z);
            mp = j_sigma(-sigma + 0.5, z);
        }
    }
};

namespace detail {

inline cplx bessel_prefactor(cplx sigma)
{
    cplx den = std::sin(2.0 * pi * sigma);
    if (std::abs(den) < 1e-10) throw DegenerateParameterError("sigma on half-integer lattice: sin(2 pi sigma) vanishes");
    return pi / den;
}

// J(z', z) from precomputed values; jp at z', j at z.
inline Matrix2 big_j(cplx pre, const JValues& jp, const JValues& j)
{
    Matrix2 r;
    r(0, 0) = jp.z * j.sh * jp.m - j.s * jp.mh;
    r(0, 1) = I * (jp.z * j.mh * jp.m - j.z * j.m * jp.mh);
    r(1, 0) = I * (j.sh * jp.s - j.s * jp.sh);
    r(1, 1) = j.z * j.m * jp.sh - j.mh * jp.s;
    return pre * r;
}

// d/dz J(z', z); j must carry the derivative values.
inline Matrix2 big_j_dz(cplx pre, const JValues& jp, const JValues& j)
{
    cplx dzm = j.m + j.z * j.mp;  // d/dz (z j_{-sigma}(z))
    Matrix2 r;
    r(0, 0) = jp.z * j.s1 * jp.m - j.sh * jp.mh;
    r(0, 1) = I * (jp.z * j.m * jp.m - dzm * jp.mh);
    r(1, 0) = I * (j.s1 * jp.s - j.sh * jp.sh);
    r(1, 1) = dzm * jp.sh - j.m * jp.s;
    return pre * r;
}

inline bool near_diagonal(cplx zp, cplx z)
{
    double scale = std::max({std::abs(z), std::abs(zp), 1e-300});
    return std::abs(z - zp) < 1e-6 * scale || z == zp;
}

// (J(z', z) - 1)/(z - z'), with the removable singularity at z = z' handled by
// the derivative of J at the midpoint (error O(|z - z'|^2)).
inline Matrix2 divided_j(cplx sigma, cplx zp, cplx z)
{
    cplx pre = bessel_prefactor(sigma);
    if (near_diagonal(zp, z)) {
        JValues a(sigma, zp);
        JValues b(sigma, 0.5 * (z + zp), true);
        return big_j_dz(pre, a, b);
    }
    Matrix2 Jm = big_j(pre, JValues(sigma, zp), JValues(sigma, z));
    return (Jm - Matrix2::Identity()) / (z - zp);
}

}  // namespace detail

inline Matrix2 bessel_kernel_J(cplx sigma, cplx zp, cplx z)
{
    cplx pre = detail::bessel_prefactor(sigma);
    return detail::big_j(pre, JValues(sigma, zp), JValues(sigma, z));
}

// Applies diag(e^{x s'}) M diag(e^{-x s}) entrywise: M[s',s] * e^{x (s' - s)}.
inline Matrix2 twist(const Matrix2& M, cplx x)
{
    Matrix2 r = M;
    r(0, 1) *= std::exp(2.0 * x);
    r(1, 0) *= std::exp(-2.0 * x);
    return r;
}

inline Matrix2 kernel_a(const MonodromyParams& p, cplx zp, cplx z)
{
    cplx x = I * pi * (p.sigma() - 2.0 * p.eta());
    return twist(detail::divided_j(p.sigma(), zp, z), x);
}

inline Matrix2 kernel_d(const MonodromyParams& p, cplx t, cplx zp, cplx z)
{
    if (z == 0.0 || zp == 0.0) throw DomainError("kernel_d: z and z' must be non-zero");
    if (t == 0.0) return Matrix2::Zero();
    cplx sigma = p.sigma();
    // (1 - J(t/z', t/z))/(z - z') = t/(z z') * (J(w', w) - 1)/(w - w')
    Matrix2 core = detail::divided_j(sigma, t / zp, t / z) * (t / (z * zp));
    Matrix2 sy = pauli_y();
    Matrix2 M = sy * core * sy;
    // conjugation by diag(t^nu e^{i pi sigma}, t^{-nu} e^{-i pi sigma})
    cplx l = std::pow(t, p.nu()) * std::exp(I * pi * sigma);
    M(0, 1) *= l * l;
    M(1, 0) /= l * l;
    return M;
}

// ---------------------------------------------------------------------------
// Fourier modes

struct ModeIndex {
    int twice_p;  // 2p, odd positive
    int s;        // +1 or -1

    double p() const { return 0.5 * twice_p; }
};

// Interleaved order (1/2,+), (1/2,-), (3/2,+), (3/2,-), ...
inline ModeIndex mode_index(int k) { return {2 * (k / 2) + 1, (k % 2 == 0) ? 1 : -1}; }
inline int mode_position(int twice_p, int s) { return 2 * ((twice_p - 1) / 2) + (s > 0 ? 0 : 1); }

// Flipping a colour's square-root branch; the determinant must not notice.
struct BranchChoice {
    bool flip_plus = false;
    bool flip_minus = false;
};

// psi and psibar factors of one colour, built from a single square root
// r = sqrt(Gamma(1+2 nu)/Gamma(1-2 nu)) so that every product of an upper and
// lower factor of the same colour is branch-free.
class ModeFactors {
public:
    ModeFactors(cplx nu, BranchChoice b = {}) : nu_(nu)
    {
        cplx r = std::sqrt(std::exp(ln_gamma(1.0 + 2.0 * nu) - ln_gamma(1.0 - 2.0 * nu)));
        rho_plus_ = b.flip_plus ? -r : r;
        rho_minus_ = b.flip_minus ? -1.0 / r : 1.0 / r;
    }

    // rho_s(nu) = sqrt(Gamma(1+2s nu)/Gamma(1-2s nu)); rho_s(-nu) = 1/rho_s(nu).
    cplx rho(int s) const { return s > 0 ? rho_plus_ : rho_minus_; }

    // psi^{p;s}(+-nu)
    cplx psi(int twice_p, int s, int nu_sign = 1) const
    {
        int k = (twice_p - 1) / 2;
        cplx signed_nu = double(nu_sign) * nu_;
        cplx rho_v = nu_sign > 0 ? rho(s) : 1.0 / rho(s);
        return rho_v * std::exp(-I * pi * double(s) / 4.0) /
               (std::exp(std::lgamma(double(k + 1))) * pochhammer(1.0 - 2.0 * double(s) * signed_nu, k));
    }

    // psibar_{q;s}(+-nu)
    cplx psibar(int twice_q, int s, int nu_sign = 1) const
    {
        int k = (twice_q - 1) / 2;
        cplx signed_nu = double(nu_sign) * nu_;
        cplx rho_v = nu_sign > 0 ? 1.0 / rho(s) : rho(s);
        cplx poch = pochhammer(2.0 * double(s) * signed_nu, k + 1);
        if (std::abs(poch) < 1e-300) throw PoleError("psibar: vanishing Pochhammer symbol");
        return rho_v * std::exp(I * pi * double(s) / 4.0) / (std::exp(std::lgamma(double(k + 1))) * poch);
    }

private:
    cplx nu_;
    cplx rho_plus_, rho_minus_;
};

namespace detail {

// x_{p;s'} - x_{-q;s} = p + q + nu (s - s')
inline cplx cauchy_denominator(cplx nu, ModeIndex pi_, ModeIndex qi)
{
    cplx d = 0.5 * double(pi_.twice_p + qi.twice_p) + nu * double(qi.s - pi_.s);
    if (std::abs(d) < 1e-10)
        throw DenominatorZeroError("mode matrix: shifted momenta collide at p=" + std::to_string(pi_.p()) +
                                   ", q=" + std::to_string(qi.p()));
    return d;
}

}  // namespace detail

// a-modes: rows hole modes (q,s), columns particle modes (p,s').
inline MatrixX mode_matrix_a(const MonodromyParams& prm, int N, BranchChoice b = {})
{
    if (N < 0) throw DomainError("mode_matrix_a: N must be non-negative");
    cplx nu = prm.nu();
    ModeFactors f(nu, b);
    cplx twist_phase = I * pi * (2.0 * prm.eta() - prm.sigma());
    MatrixX A(2 * N, 2 * N);
    for (int r = 0; r < 2 * N; ++r) {
        ModeIndex q = mode_index(r);
        for (int c = 0; c < 2 * N; ++c) {
            ModeIndex p = mode_index(c);
            A(r, c) = f.psi(p.twice_p, p.s) * f.psibar(q.twice_p, q.s) / detail::cauchy_denominator(nu, p, q) *
                      std::exp(twist_phase * double(q.s - p.s));
        }
    }
    return A;
}

// d-modes with the t-dependence stripped: rows particle modes (p,s'), columns hole modes (q,s).
inline MatrixX mode_matrix_d_bare(const MonodromyParams& prm, int N, BranchChoice b = {})
{
    if (N < 0) throw DomainError("mode_matrix_d: N must be non-negative");
    cplx nu = prm.nu();
    ModeFactors f(nu, b);
    MatrixX D(2 * N, 2 * N);
    for (int r = 0; r < 2 * N; ++r) {
        ModeIndex p = mode_index(r);
        for (int c = 0; c < 2 * N; ++c) {
            ModeIndex q = mode_index(c);
            D(r, c) = f.psi(q.twice_p, q.s, -1) * f.psibar(p.twice_p, p.s, -1) / detail::cauchy_denominator(nu, p, q) *
                      std::exp(I * pi * prm.sigma() * double(q.s - p.s));
        }
    }
    return D;
}

// Exponent of t carried by D[(p,s'),(q,s)]: (s - s') nu + p + q.
inline cplx d_exponent(cplx nu, ModeIndex p, ModeIndex q)
{
    return double(q.s - p.s) * nu + 0.5 * double(p.twice_p + q.twice_p);
}

inline cplx principal_pow(cplx t, cplx e)
{
    if (t == 0.0) return 0.0;
    return std::exp(e * std::log(t));
}

inline MatrixX apply_t_powers(const MatrixX& bare, cplx nu, cplx t)
{
    MatrixX D = bare;
    for (int r = 0; r < D.rows(); ++r)
        for (int c = 0; c < D.cols(); ++c) D(r, c) *= principal_pow(t, d_exponent(nu, mode_index(r), mode_index(c)));
    return D;
}

inline MatrixX mode_matrix_d(const MonodromyParams& prm, cplx t, int N, BranchChoice b = {})
{
    return apply_t_powers(mode_matrix_d_bare(prm, N, b), prm.nu(), t);
}

struct ModeMatrices {
    MatrixX A;
    MatrixX D;
    int N = 0;
};

inline ModeMatrices build_modes(const MonodromyParams& prm, cplx t, int N, BranchChoice b = {})
{
    return {mode_matrix_a(prm, N, b), mode_matrix_d(prm, t, N, b), N};
}

inline cplx fredholm_det(const ModeMatrices& m)
{
    if (m.A.rows() != 2 * m.N || m.D.rows() != 2 * m.N) throw DomainError("fredholm_det: inconsistent mode matrices");
    if (m.N == 0) return 1.0;
    MatrixX K = MatrixX::Identity(2 * m.N, 2 * m.N) - m.A * m.D;
    return K.partialPivLu().determinant();
}

// det of the 4N x 4N block form (I, -A; -D, I); agrees with fredholm_det.
inline cplx fredholm_det_block(const ModeMatrices& m)
{
    int n = 2 * m.N;
    if (n == 0) return 1.0;
    MatrixX B = MatrixX::Identity(2 * n, 2 * n);
    B.topRightCorner(n, n) = -m.A;
    B.bottomLeftCorner(n, n) = -m.D;
    return B.partialPivLu().determinant();
}

// Max deviation from (p+q) a - [nu sigma_z, a] = (twisted) psi (x) psibar over retained modes,
// together with the d-mode analogue (nu -> -nu).
struct RankOneResidual {
    double a = 0;
    double d = 0;
    double worst() const { return std::max(a, d); }
};

inline RankOneResidual rank_one_residual(const MonodromyParams& prm, int N)
{
    RankOneResidual res;
    if (N <= 0) return res;
    cplx nu = prm.nu();
    ModeFactors f(nu);
    MatrixX A = mode_matrix_a(prm, N);
    MatrixX D = mode_matrix_d_bare(prm, N);
    cplx tw = I * pi * (prm.sigma() - 2.0 * prm.eta());
    for (int r = 0; r < 2 * N; ++r) {
        for (int c = 0; c < 2 * N; ++c) {
            // a-block entry a^{p;s'}_{-q;s} sits at A[(q,s),(p,s')]
            ModeIndex q = mode_index(r), p = mode_index(c);
            cplx pq = 0.5 * double(p.twice_p + q.twice_p);
            cplx lhs = pq * A(r, c) - nu * double(p.s - q.s) * A(r, c);
            cplx rhs = std::exp(tw * double(p.s)) * f.psi(p.twice_p, p.s) * f.psibar(q.twice_p, q.s) *
                       std::exp(-tw * double(q.s));
            res.a = std::max(res.a, std::abs(lhs - rhs));
            // d-block entry at D[(p,s'),(q,s)] with p <-> row
            ModeIndex pd = mode_index(r), qd = mode_index(c);
            cplx pqd = 0.5 * double(pd.twice_p + qd.twice_p);
            cplx dstrip = D(r, c) * std::exp(-I * pi * prm.sigma() * double(qd.s - pd.s));
            cplx lhs_d = pqd * dstrip - (-nu) * double(qd.s - pd.s) * dstrip;
            cplx rhs_d = f.psi(qd.twice_p, qd.s, -1) * f.psibar(pd.twice_p, pd.s, -1);
            res.d = std::max(res.d, std::abs(lhs_d - rhs_d));
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Quadrature oracle

enum class KernelKind { a, d };

struct ContinuousKernel {
    KernelKind kind;
    MonodromyParams params;
    cplx t = 0.0;
};

inline double default_radius(const ContinuousKernel& k)
{
    return k.kind == KernelKind::a ? 1.0 : std::max(1.0, 4.0 * std::abs(k.t));
}

// Extracts Fourier modes of the kernel on |z| = radius with M samples per variable.
// The z' grid is rotated by half a step so no sample sits on the diagonal.
inline MatrixX modes_by_quadrature(const ContinuousKernel& k, int N, double radius, int samples = 0)
{
    if (N < 0) throw DomainError("modes_by_quadrature: N must be non-negative");
    if (!(radius > 0)) throw DomainError("modes_by_quadrature: radius must be positive");
    int M = samples;
    if (M <= 0) {
        M = 32;
        while (M < 4 * N + 8) M *= 2;
    }
    if (M < 2 * N + 2) throw DomainError("modes_by_quadrature: too few samples for N");
    const MonodromyParams& prm = k.params;
    cplx sigma = prm.sigma();
    cplx pre = detail::bessel_prefactor(sigma);

    std::vector<cplx> z(static_cast<size_t>(M)), zp(static_cast<size_t>(M));
    for (int i = 0; i < M; ++i) {
        z[size_t(i)] = std::polar(radius, 2.0 * pi * i / M);
        zp[size_t(i)] = std::polar(radius, 2.0 * pi * (i + 0.5) / M);
    }

    // samples[l][k] = kernel(z'_l, z_k)
    std::vector<Matrix2> K(size_t(M * M));
    if (k.kind == KernelKind::a) {
        std::vector<JValues> jz, jzp;
        for (int i = 0; i < M; ++i) {
            jz.emplace_back(sigma, z[size_t(i)]);
            jzp.emplace_back(sigma, zp[size_t(i)]);
        }
        cplx x = I * pi * (sigma - 2.0 * prm.eta());
        for (int l = 0; l < M; ++l)
            for (int c = 0; c < M; ++c) {
                Matrix2 Jm = detail::big_j(pre, jzp[size_t(l)], jz[size_t(c)]);
                K[size_t(l * M + c)] = twist((Jm - Matrix2::Identity()) / (z[size_t(c)] - zp[size_t(l)]), x);
            }
    } else {
        for (int l = 0; l < M; ++l)
            for (int c = 0; c < M; ++c) K[size_t(l * M + c)] = kernel_d(prm, k.t, zp[size_t(l)], z[size_t(c)]);
    }

    // coef(m, n) = coefficient of z'^{e(m)} z^{e(n)}; e(m) = m for a, -(m+1) for d.
    auto exponent = [&](int m) { return k.kind == KernelKind::a ? double(m) : -double(m + 1); };
    int R = M / 2 + 1;  // extract one index past Nyquist-half for the decay check
    std::vector<Matrix2> partial(size_t(M * R), Matrix2::Zero());
    for (int l = 0; l < M; ++l)
        for (int n = 0; n < R; ++n) {
            Matrix2 acc = Matrix2::Zero();
            for (int c = 0; c < M; ++c) acc += K[size_t(l * M + c)] * std::pow(z[size_t(c)], -exponent(n));
            partial[size_t(l * R + n)] = acc / double(M);
        }
    auto coef = [&](int m, int n) {
        Matrix2 acc = Matrix2::Zero();
        for (int l = 0; l < M; ++l) acc += partial[size_t(l * R + n)] * std::pow(zp[size_t(l)], -exponent(m));
        return Matrix2(acc / double(M));
    };

    auto scaled = [&](int m, int n) {
        return coef(m, n).cwiseAbs().maxCoeff() * std::pow(radius, exponent(m) + exponent(n));
    };
    double top = 0, tail = 0;
    for (int m = 0; m <= M / 2; ++m) tail = std::max({tail, scaled(m, M / 2), scaled(M / 2, m)});
    MatrixX out(2 * N, 2 * N);
    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n) {
            Matrix2 c = coef(m, n);
            top = std::max(top, scaled(m, n));
            // a: z'^{p-1/2} z^{q-1/2}, entry [s', s] -> A[(q,s),(p,s')]
            // d: z'^{-(q+1/2)} z^{-(p+1/2)}, entry [s, s'] -> D[(p,s'),(q,s)]
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    out(mode_position(2 * n + 1, b == 0 ? 1 : -1), mode_position(2 * m + 1, a == 0 ? 1 : -1)) = c(a, b);
        }
    if (tail > 1e-10 * std::max(1.0, top))
        throw ConvergenceError("modes_by_quadrature: Fourier modes have not decayed by the Nyquist index (tail " +
                               std::to_string(tail) + ")");
    return out;
}

}  // namespace painleve
