// Benchmark for the parallel matrix composition kernel against the serial
// reference, on the flat RLL equation matrices (the largest products in the
// verification suites).

#include "qsa/rll.hpp"

#include <chrono>
#include <iostream>

using namespace qsa;

namespace {

double time_product(const GradedMatrix &a, const GradedMatrix &b, int reps) {
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) {
        GradedMatrix c = a * b;
        if (c.dim() != a.dim()) std::abort();
    }
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
               .count() /
           reps;
}

} // namespace

int main(int argc, char **argv) {
    int reps = argc > 1 ? std::atoi(argv[1]) : 3;
    for (auto [m, n] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 2}}) {
        ParityStructure ps{m, n};
        Space v = Space::fundamental(ps);
        GradedMatrix L = eval_L(ps);
        GradedMatrix Lw = L.substituted(VZ, LaurentPoly::variable(VW));
        // lift both to aux (x) aux (x) W as in the exchange relation
        GradedMatrix a = graded_kron(L, GradedMatrix::identity(v));
        GradedMatrix b = graded_kron(GradedMatrix::identity(v), Lw);

        set_parallel_kernels(false);
        GradedMatrix ref = matmul_serial(a, b);
        double serial = time_product(a, b, reps);
        set_parallel_kernels(true);
        GradedMatrix par = a * b;
        double parallel = time_product(a, b, reps);

        std::cout << "gl(" << m << "|" << n << ") dim " << a.dim()
                  << ": serial " << serial << " ms, parallel " << parallel
                  << " ms, speedup x" << (parallel > 0 ? serial / parallel : 0)
                  << (ref == par ? "" : "  [MISMATCH]") << "\n";
        if (!(ref == par)) return 1;
    }
    return 0;
}
