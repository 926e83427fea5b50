// At nu = 1/4 the normalized tau function is elementary: eta = 1/4 gives
// e^{+4 sqrt t} and eta = 0 gives e^{-4 sqrt t}. Prints all three routes.
#include <cmath>
#include <cstdio>

#include "painleve/painleve.hpp"

using namespace painleve;

int main()
{
    Truncation tr{16, 8, 4};
    for (double eta : {0.25, 0.0}) {
        double sign = eta == 0.25 ? 1.0 : -1.0;
        auto p = MonodromyParams::from_nu(0.25, eta);
        std::printf("eta = %.2f, expected exp(%+.0f sqrt t)\n", eta, 4 * sign);
        std::printf("%8s %22s %12s %12s %12s\n", "t", "exact", "fredholm", "maya", "nekrasov");
        for (double t : {0.001, 0.01, 0.05, 0.1}) {
            double exact = std::exp(sign * 4.0 * std::sqrt(t));
            std::printf("%8.3f %22.17f", t, exact);
            for (Method m : {Method::fredholm, Method::maya, Method::nekrasov})
                std::printf(" %12.2e", rel_diff(make_tau_function(p, m, tr)(t), exact));
            std::printf("\n");
        }
        ZetaJet j = zeta_jet(0.05, p, Method::nekrasov, tr, 1e-3);
        std::printf("zeta(0.05) = %.15f, closed form 1/16 %+g sqrt t = %.15f\n\n", j.zeta.real(), 2 * sign,
                    1.0 / 16 + sign * 2.0 * std::sqrt(0.05));
    }
}
