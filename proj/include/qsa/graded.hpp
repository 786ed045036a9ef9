#pragma once

// Z2-graded vector spaces, graded matrices and Koszul-sign tensor products.
//
// Index convention (used everywhere): for an operator M we store
// storage[row][col] = M^{col}_{row}, where the upper index labels the INPUT
// basis vector and the lower index the OUTPUT, i.e.
// M(v^{a'}) = sum_a M^{a'}_a v^a. Matrix units E^a_b therefore sit at
// storage[b][a]. Composite indices linearize with the first tensor factor
// most significant. Ordinary storage products compose operators
// (left factor applied last).

#include "qsa/rational.hpp"

#include <functional>
#include <vector>

namespace qsa {

struct ParityStructure {
    int m = 1, n = 1;
    bool graded = true; // false: all parities forced to 0 (negative-test toggle)

    int dim() const { return m + n; }
    // i is 1-based
    int parity(int i) const { return (graded && i > m) ? 1 : 0; }
};

// A tensor product of elementary graded spaces, kept as a flat parity vector.
struct Space {
    std::vector<int> parities; // parity per (0-based) basis index

    int dim() const { return static_cast<int>(parities.size()); }
    int parity(int i) const { return parities[static_cast<size_t>(i)]; }

    static Space fundamental(const ParityStructure &ps);
    static Space tensor(const Space &a, const Space &b);
    static Space power(const ParityStructure &ps, int slots);

    bool operator==(const Space &o) const { return parities == o.parities; }
};

class GradedMatrix {
  public:
    GradedMatrix() = default;
    explicit GradedMatrix(Space s)
        : space_(std::move(s)),
          e_(static_cast<size_t>(space_.dim()) * static_cast<size_t>(space_.dim())) {}

    static GradedMatrix identity(const Space &s);
    static GradedMatrix zero(const Space &s) { return GradedMatrix(s); }
    // scalar * identity
    static GradedMatrix scalar(const Space &s, const RationalFunction &c);
    // matrix unit E^a_b (1-based): maps v^a to v^b
    static GradedMatrix unit(const Space &s, int a, int b);

    const Space &space() const { return space_; }
    int dim() const { return space_.dim(); }

    RationalFunction &at(int row, int col) {
        return e_[static_cast<size_t>(row) * static_cast<size_t>(dim()) +
                  static_cast<size_t>(col)];
    }
    const RationalFunction &at(int row, int col) const {
        return e_[static_cast<size_t>(row) * static_cast<size_t>(dim()) +
                  static_cast<size_t>(col)];
    }

    bool is_zero() const;
    bool operator==(const GradedMatrix &o) const;
    bool operator!=(const GradedMatrix &o) const { return !(*this == o); }

    GradedMatrix operator+(const GradedMatrix &o) const;
    GradedMatrix operator-(const GradedMatrix &o) const;
    GradedMatrix operator-() const;
    GradedMatrix operator*(const GradedMatrix &o) const; // composition
    GradedMatrix operator*(const RationalFunction &c) const;

    GradedMatrix inverse() const; // exact Gauss-Jordan; throws SingularMatrix

    GradedMatrix substituted(Var v, const LaurentPoly &value) const;

    // first differing entry, for counterexample reports
    struct Diff {
        int row = -1, col = -1;
        RationalFunction lhs, rhs;
    };
    static std::optional<Diff> first_difference(const GradedMatrix &a,
                                                const GradedMatrix &b);

  private:
    Space space_;
    std::vector<RationalFunction> e_;
};

struct SingularMatrix : std::runtime_error {
    SingularMatrix() : std::runtime_error("matrix is singular") {}
};

// Koszul-sign tensor product:
//   (A (x) B)(v_a (x) v_b) = (-1)^{[B][a]} (A v_a (x) B v_b),
// with mixed-parity entries handled per entry ([entry^a_b] = [a]+[b]).
GradedMatrix graded_kron(const GradedMatrix &A, const GradedMatrix &B);

// Ordinary (sign-free) Kronecker product; used by the theta-conjugated
// "usual matrix multiplication" equations.
GradedMatrix plain_kron(const GradedMatrix &A, const GradedMatrix &B);

// Graded permutation P and sign matrix theta on V (x) V.
GradedMatrix perm_matrix(const ParityStructure &ps);
GradedMatrix theta_matrix(const ParityStructure &ps);

// Apply/remove the (-1)^{[a][b]} dressing R -> R~ (involutive).
GradedMatrix tilde_toggle(const GradedMatrix &R, const ParityStructure &ps);

// Embed a 1-slot or 2-adjacent-slot operator into the `total`-fold graded
// tensor power; slot is 1-based. For a 2-slot operator acting on
// non-adjacent slots (1,3) conjugate with perm matrices.
GradedMatrix embed(const GradedMatrix &A, const ParityStructure &ps, int slot,
                   int total);
// Plain (sign-free Kronecker) embedding of a 2-slot operator into slots
// (s, s+1) of the total space; also supports 1-slot operators.
GradedMatrix embed_plain(const GradedMatrix &A, const ParityStructure &ps, int slot,
                         int total);
// theta acting on slots (s1, s2) of the k-fold space (diagonal signs).
GradedMatrix theta_on_slots(const ParityStructure &ps, int s1, int s2, int total);

// Serial reference product kept for testing the OpenMP kernel.
GradedMatrix matmul_serial(const GradedMatrix &a, const GradedMatrix &b);

// Global switch for the OpenMP kernels (on by default when compiled with
// OpenMP). Output is identical either way; per-entry work is sequential.
void set_parallel_kernels(bool on);
bool parallel_kernels_enabled();

} // namespace qsa
