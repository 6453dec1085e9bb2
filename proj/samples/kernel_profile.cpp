// Kernel of the a = 1 transform along the positive axis: its sup for a few multiplicities, the
// threshold k0 below which the kernel dips under -1, and an optional CSV profile.
//
// Usage: sample_kernel_profile [k] [profile.csv]

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "genft/kernel1d.hpp"

int main(int argc, char** argv) {
    using namespace genft;
    for (double k : {0.1, 0.25, 0.3, 0.44, 0.5, 1.0}) {
        const SweepResult s = kernel_sup(k);
        std::printf("k = %.2f  sup |B| = %.10f at t = %.6f  (%s)\n", k, s.sup, s.argmax,
                    to_string(classify_boundedness(k).bound));
    }
    const double k0 = find_k0();
    const FirstMinimum m = first_minimum(k0);
    std::printf("k0 = %.12f  first minimum %.12f at t = %.8f\n", k0, m.value, m.t);

    const double k = argc > 1 ? std::atof(argv[1]) : 0.25;
    if (argc > 2) {
        std::ofstream os(argv[2]);
        write_kernel_csv(os, kernel_profile(KernelParams(k, 1.0), 50.0, 5000));
    }
    return 0;
}
