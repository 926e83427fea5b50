// Evaluates the normalized tau function by the three routes at generic
// parameters and prints their pairwise relative differences.
#include <cstdio>

#include "painleve/painleve.hpp"

using namespace painleve;

int main()
{
    auto p = MonodromyParams::from_nu({0.37, 0.0}, {0.11, 0.0});
    std::printf("%6s %24s %24s %10s %10s %10s\n", "t", "Re tau (fredholm)", "Im tau (fredholm)", "fred-maya", "fred-nek",
                "maya-nek");
    for (double t : {0.01, 0.05, 0.1, 0.2, 0.4}) {
        CrossValidationReport r = cross_validate(t, p, {});
        std::printf("%6.2f %24.17f %24.17f %10.1e %10.1e %10.1e\n", t, r.tau_fredholm.real(), r.tau_fredholm.imag(),
                    r.diff_fredholm_maya, r.diff_fredholm_nekrasov, r.diff_maya_nekrasov);
    }
}
