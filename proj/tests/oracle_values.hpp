// Generated by tests/oracle/make_oracle.py. Do not edit.
#pragma once
#include <complex>

namespace oracle {
inline const std::complex<double> ln_gamma_0p3_0p4i{0.49665590338172579665, -0.98274344760714666031};
inline const std::complex<double> ln_gamma_m2p5_0p7i{-1.4941873089113575064, -8.6464756828033773445};
inline const std::complex<double> ln_gamma_m4p3_m1p2i{-5.4238629718951070586, 13.183509411525997842};
inline const std::complex<double> j_half_at_1{1.5906368546373290634, 0.0};
inline const std::complex<double> j_0p2_at_0p3_0p1i{1.382289431929581455, 0.091003955254936024036};
inline const std::complex<double> j_m0p7_0p2i_at_m1p5_2i{-2.0866815374399171842, -2.1306642341501393843};
inline const std::complex<double> barnes_1p7_3{5.8537658133288037814, 0.0};
inline const std::complex<double> barnes_0p3_0p2i_m2{-0.12921835459932888467, -0.08224524594315925716};
inline const std::complex<double> bigJ_0{1.1912619412710330206, 0.072365093517199858999};
inline const std::complex<double> bigJ_1{-0.12738483657661717897, 0.34434836795903947476};
inline const std::complex<double> bigJ_2{0.099782337661378734418, -0.020078723404020990471};
inline const std::complex<double> bigJ_3{0.83338717507788352372, -0.019635086143411356451};
inline const std::complex<double> zinst_nu0p37_t2{18.69462911040480561, 0.0};
inline const std::complex<double> zinst_nu0p2_0p1i_t3{2.687710131875502771, -1.6428195043469899411};
inline const std::complex<double> zdual_ref_t0p05{1.0443337744309468292, 0.86770731848698432567};
inline const std::complex<double> zdual_ref_t0p1{1.282516902172304946, 1.0557942296540944925};
}  // namespace oracle
