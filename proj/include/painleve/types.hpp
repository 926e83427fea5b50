#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace painleve {

using cplx = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using MatrixX = Eigen::MatrixXcd;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Relative difference with a floor so that comparisons against zero stay meaningful.
inline double rel_diff(cplx a, cplx b)
{
    double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
}

// Neumaier summation, applied separately to real and imaginary parts.
class CompensatedSum {
public:
    void add(cplx x)
    {
        add_part(re_, cre_, x.real());
        add_part(im_, cim_, x.imag());
    }
    cplx value() const { return {re_ + cre_, im_ + cim_}; }

private:
    static void add_part(double& s, double& c, double x)
    {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double re_ = 0, cre_ = 0, im_ = 0, cim_ = 0;
};

}  // namespace painleve
