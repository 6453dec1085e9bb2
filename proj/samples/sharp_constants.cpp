// Table of sharp L2 constants c(beta, lambda, a) with the scaling check against a = 2, and one
// empirical quotient next to its bound.
//
// Usage: sample_sharp_constants [table.csv]

#include <cstdio>
#include <fstream>

#include "genft/corpus.hpp"
#include "genft/pitt.hpp"

int main(int argc, char** argv) {
    using namespace genft;
    const auto rows = constant_table({0.0, 0.25, 0.5, 1.0}, {0.0, 0.5, 1.5}, {1.0, 2.0, 3.0});
    std::printf("%6s %6s %4s %12s %10s\n", "beta", "lambda", "a", "c", "scaling");
    for (const ConstantRow& r : rows)
        std::printf("%6.2f %6.2f %4.1f %12.8f %10.2e\n", r.beta, r.lambda, r.a, r.c,
                    scaling_identity_defect(r.beta, r.lambda, r.a));

    const double beta = 0.5, lambda = 0.0, a = 2.0;
    HankelEngine engine;
    const double q = pitt_quotient(corpus::gaussian(), PittParams::l2(beta, lambda, a), engine);
    std::printf("\ngauss quotient at (%.2f, %.2f, %.1f): %.10f <= %.10f\n", beta, lambda, a, q,
                sharp_constant(beta, lambda, a));
    std::printf("log uncertainty constant at (%.2f, %.1f): %.10f\n", lambda, a, log_up_constant(lambda, a));

    if (argc > 1) {
        std::ofstream os(argv[1]);
        write_constant_csv(os, rows);
    }
    return 0;
}
