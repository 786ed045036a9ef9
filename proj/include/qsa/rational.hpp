#pragma once

// Exact arithmetic over Q(q, z, w, z1, z2, w1, w2, a, b, ...): sparse
// multivariate Laurent polynomials, canonical rational functions and
// one-sided Laurent expansions. Coefficients are GMP rationals; there is
// no floating point anywhere in this library.

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsa {

using Rat = mpq_class;

// Fixed variable universe, lexicographic order with q first. The trailing
// g* variables stand for the formal half central charges: g = q^{c/2},
// gi = q^{c_i/2}.
enum Var : int {
    VQ = 0,
    VZ,
    VW,
    VZ1,
    VZ2,
    VW1,
    VW2,
    VA,
    VB,
    VT,
    VG,
    VG1,
    VG2,
    VG3,
    kNumVars
};

const char *var_name(Var v);
std::optional<Var> var_from_name(const std::string &name);

using Exp = std::array<int16_t, kNumVars>;

inline Exp zero_exp() {
    Exp e{};
    e.fill(0);
    return e;
}

struct DivisionByZero : std::runtime_error {
    DivisionByZero() : std::runtime_error("division by zero") {}
};
struct ExpansionError : std::runtime_error {
    explicit ExpansionError(const std::string &m) : std::runtime_error(m) {}
};

class LaurentPoly {
  public:
    // terms: exponent vector -> nonzero coefficient
    using TermMap = std::map<Exp, Rat>;

    LaurentPoly() = default;
    explicit LaurentPoly(const Rat &c);
    static LaurentPoly variable(Var v, int power = 1);
    static LaurentPoly monomial(const Rat &c, const Exp &e);
    static LaurentPoly constant(long num, long den = 1);

    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_one() const;

    void add_term(const Exp &e, const Rat &c);

    LaurentPoly operator-() const;
    LaurentPoly operator+(const LaurentPoly &o) const;
    LaurentPoly operator-(const LaurentPoly &o) const;
    LaurentPoly operator*(const LaurentPoly &o) const;
    LaurentPoly &operator+=(const LaurentPoly &o);
    LaurentPoly &operator-=(const LaurentPoly &o);
    bool operator==(const LaurentPoly &o) const { return terms_ == o.terms_; }
    bool operator!=(const LaurentPoly &o) const { return terms_ != o.terms_; }
    bool operator<(const LaurentPoly &o) const { return terms_ < o.terms_; }

    // Leading term under lex order (largest exponent vector).
    const std::pair<const Exp, Rat> &leading() const;

    int degree(Var v) const;     // max exponent of v, 0 if absent/zero poly
    int low_degree(Var v) const; // min exponent of v
    bool depends_on(Var v) const;

    // Per-variable minimum exponents across all terms ("monomial content").
    Exp min_exponents() const;
    LaurentPoly shifted(const Exp &by) const; // multiply by monomial x^by

    // Coefficient of v^k, as a Laurent poly in the remaining variables.
    LaurentPoly coeff_of(Var v, int k) const;

    // Substitute v -> value (general polynomial substitution; negative
    // exponents of v require `value` to be an invertible monomial).
    LaurentPoly substituted(Var v, const LaurentPoly &value) const;

    LaurentPoly derivative(Var v) const;

    std::string str() const;

  private:
    TermMap terms_;
};

LaurentPoly pow(const LaurentPoly &p, int n); // n >= 0, or p monomial

// gcd of Laurent polynomials: monomial content is stripped first, then a
// primitive subresultant PRS on the polynomial parts. Result is a true
// polynomial (min exponent 0 per variable) with monic lex-leading term.
LaurentPoly poly_gcd(const LaurentPoly &x, const LaurentPoly &y);

// Exact division; nullopt if b does not divide a.
std::optional<LaurentPoly> try_divide(const LaurentPoly &a, const LaurentPoly &b);

class RationalFunction {
  public:
    RationalFunction() : num_(), den_(Rat(1)) {}
    RationalFunction(const Rat &c) : num_(c), den_(Rat(1)) {}
    RationalFunction(long c) : num_(Rat(c)), den_(Rat(1)) {}
    RationalFunction(const LaurentPoly &n) : num_(n), den_(Rat(1)) {}
    RationalFunction(LaurentPoly n, LaurentPoly d);

    static RationalFunction variable(Var v, int power = 1) {
        return RationalFunction(LaurentPoly::variable(v, power));
    }

    const LaurentPoly &num() const { return num_; }
    const LaurentPoly &den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    RationalFunction operator-() const;
    RationalFunction operator+(const RationalFunction &o) const;
    RationalFunction operator-(const RationalFunction &o) const;
    RationalFunction operator*(const RationalFunction &o) const;
    RationalFunction operator/(const RationalFunction &o) const;
    RationalFunction &operator+=(const RationalFunction &o) { return *this = *this + o; }
    RationalFunction &operator-=(const RationalFunction &o) { return *this = *this - o; }
    RationalFunction &operator*=(const RationalFunction &o) { return *this = *this * o; }

    RationalFunction inverse() const;

    // Canonical forms make equality structural.
    bool operator==(const RationalFunction &o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const RationalFunction &o) const { return !(*this == o); }

    RationalFunction substituted(Var v, const LaurentPoly &value) const;
    RationalFunction derivative(Var v) const;
    bool depends_on(Var v) const { return num_.depends_on(v) || den_.depends_on(v); }

    std::string str() const;

  private:
    void canonicalize();
    LaurentPoly num_, den_;
};

inline RationalFunction normalize(const RationalFunction &f) { return f; }

enum class Direction { AroundZero, AroundInfinity };

// One-sided Laurent expansion in a single variable. Coefficients are exact
// rational functions in the remaining variables. Exponents outside
// [lo, hi] are unknown, never assumed zero.
struct LaurentSeries {
    Var var = VZ;
    Direction dir = Direction::AroundInfinity;
    std::map<int, RationalFunction> coeffs; // only in-window entries
    int lo = 0, hi = -1;

    RationalFunction at(int k) const;
};

// Expand f in `var` on the exponent window [lo, hi].
LaurentSeries expand(const RationalFunction &f, Var var, Direction dir, int lo, int hi);

} // namespace qsa
