#pragma once

// Formal-distribution calculus: delta(z), truncated multi-variable Laurent
// series with matrix coefficients, two-sided expansion differences, windowed
// products with finiteness checking, and a delta-supported canonical form
// (poles + derivative orders) for exact same-variable resummation.

#include "qsa/graded.hpp"
#include "qsa/report.hpp"

#include <limits>

namespace qsa {

struct InsufficientGuard : std::runtime_error {
    explicit InsufficientGuard(const std::string &m) : std::runtime_error(m) {}
};
struct OutOfWindow : std::runtime_error {
    explicit OutOfWindow(const std::string &m) : std::runtime_error(m) {}
};
struct PoleExtractionError : std::runtime_error {
    explicit PoleExtractionError(const std::string &m) : std::runtime_error(m) {}
};

constexpr long kNegInf = std::numeric_limits<long>::min() / 4;
constexpr long kPosInf = std::numeric_limits<long>::max() / 4;

// closed integer interval with infinity sentinels; lo > hi means empty
struct Ival {
    long lo = 0, hi = 0;
    static Ival all() { return {kNegInf, kPosInf}; }
    static Ival point(long p) { return {p, p}; }
    bool empty() const { return lo > hi; }
    bool finite() const { return lo > kNegInf && hi < kPosInf; }
    bool contains(long x) const { return lo <= x && x <= hi; }
    bool contains(const Ival &o) const { return o.empty() || (lo <= o.lo && o.hi <= hi); }
    Ival meet(const Ival &o) const { return {std::max(lo, o.lo), std::min(hi, o.hi)}; }
    Ival hull(const Ival &o) const {
        if (empty()) return o;
        if (o.empty()) return *this;
        return {std::min(lo, o.lo), std::max(hi, o.hi)};
    }
};
Ival ival_add(const Ival &a, const Ival &b);   // Minkowski sum
Ival ival_neg(const Ival &a);
Ival ival_sub_point(long e, const Ival &a);    // e - a

class FormalDistribution {
  public:
    using Key = std::vector<int>; // exponents aligned with vars()

    FormalDistribution() = default;

    // scalar or matrix constant (no spectral variables)
    static FormalDistribution constant(const GradedMatrix &c);
    static FormalDistribution scalar_constant(const RationalFunction &c);

    // delta(bv/av * mono): coefficient mono^k * 1 at av^{-k} bv^{k}, |k| <= guard.
    // mono must be an invertible monomial free of av, bv.
    static FormalDistribution delta(Var av, Var bv, const RationalFunction &mono,
                                    long guard);

    // one-sided expansion of f(t) with t standing for the ratio bv/av, placed
    // on the diagonal av^{-k} bv^{k}. f must be rational in the scratch
    // variable VT only. AroundZero covers the region |bv| << |av|.
    static FormalDistribution ratio_series(Var av, Var bv, const RationalFunction &f,
                                           Direction dir, long guard);

    // one-sided expansion of a rational matrix in `v` on [lo, hi]; occurrences
    // of the variables in `split` inside the coefficients are pulled out as
    // extra distribution variables (they must appear polynomially).
    static FormalDistribution expansion(const GradedMatrix &M, Var v, Direction dir,
                                        long lo, long hi,
                                        const std::vector<Var> &split = {});

    // AroundInfinity minus AroundZero; vanishes iff M is Laurent-polynomial in v.
    static FormalDistribution two_sided_difference(const GradedMatrix &M, Var v,
                                                   long lo, long hi,
                                                   const std::vector<Var> &split = {});

    // scalar Laurent polynomial in the listed spectral variables (coefficients
    // may involve the remaining parameters)
    static FormalDistribution polynomial(const LaurentPoly &p,
                                         const std::vector<Var> &svars);

    const std::vector<Var> &vars() const { return vars_; }
    const std::map<Key, GradedMatrix> &coeffs() const { return c_; }
    Ival support(Var v) const;
    Ival known(Var v) const;
    bool is_zero_on_known() const { return c_.empty(); }

    // coefficient lookup; exponents for vars absent from `vars_` must be 0.
    // Throws OutOfWindow when the exponent is not known and not provably zero.
    GradedMatrix at(const std::map<Var, long> &e) const;

    FormalDistribution operator+(const FormalDistribution &o) const;
    FormalDistribution operator-(const FormalDistribution &o) const;
    FormalDistribution operator-() const;
    FormalDistribution scaled(const RationalFunction &f) const; // f: params only

    friend FormalDistribution dist_mul(const FormalDistribution &a,
                                       const FormalDistribution &b,
                                       const std::map<Var, Ival> &out);
    friend FormalDistribution dist_mul(const FormalDistribution &a,
                                       const FormalDistribution &b);
    friend CheckResult dist_equal(const FormalDistribution &a,
                                  const FormalDistribution &b);

    // internal constructor pieces exposed for the factory functions
    struct VarData {
        Var v;
        Ival support; // superset of true support
        Ival known;   // coefficients exact inside
    };
    struct Diag {
        // exponents of vars_[i] and vars_[j] sum to `s` on the true support
        int i, j;
        long s;
    };

  private:
    std::vector<Var> vars_;
    std::vector<VarData> vd_;
    std::vector<Diag> diag_;
    std::map<Key, GradedMatrix> c_; // nonzero coefficients inside known box
    int var_index(Var v) const;
    void prune();
    friend struct DistBuilder;
};

// ordered product (a's coefficients left of b's). The explicit-window form
// verifies, per requested exponent, that the Cauchy sum is finite and fully
// covered by the operands' known windows; otherwise InsufficientGuard.
FormalDistribution dist_mul(const FormalDistribution &a, const FormalDistribution &b,
                            const std::map<Var, Ival> &out);
// convenience form: output window = intersection of known windows
FormalDistribution dist_mul(const FormalDistribution &a, const FormalDistribution &b);

// coefficient-wise equality on the intersection of the known boxes
CheckResult dist_equal(const FormalDistribution &a, const FormalDistribution &b);

// ---------------------------------------------------------------------------
// Delta-supported canonical form: finite sum of terms
//   coeff * tsd(1/(v - pole)^order)
// where tsd is the two-sided expansion difference and pole is an invertible
// monomial in the parameters. Supports exact multiplication by rational
// matrices regular at the poles (the resummed product a windowed Cauchy sum
// cannot express).

struct DeltaSupported {
    struct Term {
        LaurentPoly pole; // invertible monomial, nonzero
        int order;        // >= 1
        GradedMatrix coeff;
    };
    Var var = VZ;
    std::vector<Term> terms;

    FormalDistribution to_distribution(long lo, long hi) const;
    DeltaSupported operator+(const DeltaSupported &o) const;
    DeltaSupported operator-() const;
};

// monomial roots (with multiplicity) of a polynomial in `v`; throws
// PoleExtractionError if a non-monomial factor in v remains
std::vector<std::pair<LaurentPoly, int>> monomial_roots(const LaurentPoly &den, Var v);

// partial-fraction decomposition of a rational matrix kernel in `v`,
// keeping only the delta-generating pole parts
DeltaSupported delta_form(const GradedMatrix &K, Var v);

enum class Combine { MulLeft, MulRight, KronLeft, KronRight };

// exact product of a rational matrix g(v) with a delta-supported element:
// Taylor-expand g at each pole (Leibniz for higher orders) and combine with
// the term coefficient by multiplication or graded Kronecker product
DeltaSupported combine_rational(const GradedMatrix &g, const DeltaSupported &x,
                                Combine how);

} // namespace qsa
