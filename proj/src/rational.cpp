#include "qsa/rational.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#ifdef QSA_GCD_DEBUG
#include <chrono>
#include <cstdio>
#endif

namespace qsa {

static const char *kVarNames[kNumVars] = {"q",  "z",  "w",  "z1", "z2", "w1", "w2",
                                          "a",  "b",  "t",  "g",  "g1", "g2", "g3"};

const char *var_name(Var v) { return kVarNames[v]; }

std::optional<Var> var_from_name(const std::string &name) {
    for (int i = 0; i < kNumVars; ++i)
        if (name == kVarNames[i]) return static_cast<Var>(i);
    return std::nullopt;
}

LaurentPoly::LaurentPoly(const Rat &c) {
    if (c != 0) terms_[zero_exp()] = c;
}

LaurentPoly LaurentPoly::variable(Var v, int power) {
    LaurentPoly p;
    Exp e = zero_exp();
    e[v] = static_cast<int16_t>(power);
    p.terms_[e] = 1;
    return p;
}

LaurentPoly LaurentPoly::monomial(const Rat &c, const Exp &e) {
    LaurentPoly p;
    if (c != 0) p.terms_[e] = c;
    return p;
}

LaurentPoly LaurentPoly::constant(long num, long den) {
    Rat c(num, den);
    c.canonicalize();
    return LaurentPoly(c);
}

bool LaurentPoly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == zero_exp();
}

bool LaurentPoly::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == zero_exp() &&
           terms_.begin()->second == 1;
}

void LaurentPoly::add_term(const Exp &e, const Rat &c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (auto &[e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly &o) const {
    LaurentPoly r = *this;
    r += o;
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly &o) const {
    LaurentPoly r = *this;
    r -= o;
    return r;
}

LaurentPoly &LaurentPoly::operator+=(const LaurentPoly &o) {
    for (auto &[e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly &LaurentPoly::operator-=(const LaurentPoly &o) {
    for (auto &[e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly &o) const {
    LaurentPoly r;
    for (auto &[e1, c1] : terms_) {
        for (auto &[e2, c2] : o.terms_) {
            Exp e;
            for (int i = 0; i < kNumVars; ++i)
                e[i] = static_cast<int16_t>(e1[i] + e2[i]);
            r.add_term(e, c1 * c2);
        }
    }
    return r;
}

const std::pair<const Exp, Rat> &LaurentPoly::leading() const {
    assert(!terms_.empty());
    return *terms_.rbegin();
}

int LaurentPoly::degree(Var v) const {
    int d = 0;
    bool first = true;
    for (auto &[e, c] : terms_) {
        if (first || e[v] > d) d = e[v];
        first = false;
    }
    return d;
}

int LaurentPoly::low_degree(Var v) const {
    int d = 0;
    bool first = true;
    for (auto &[e, c] : terms_) {
        if (first || e[v] < d) d = e[v];
        first = false;
    }
    return d;
}

bool LaurentPoly::depends_on(Var v) const {
    for (auto &[e, c] : terms_)
        if (e[v] != 0) return true;
    return false;
}

Exp LaurentPoly::min_exponents() const {
    Exp m = zero_exp();
    bool first = true;
    for (auto &[e, c] : terms_) {
        if (first) {
            m = e;
            first = false;
        } else {
            for (int i = 0; i < kNumVars; ++i) m[i] = std::min(m[i], e[i]);
        }
    }
    return m;
}

LaurentPoly LaurentPoly::shifted(const Exp &by) const {
    LaurentPoly r;
    for (auto &[e, c] : terms_) {
        Exp e2;
        for (int i = 0; i < kNumVars; ++i) e2[i] = static_cast<int16_t>(e[i] + by[i]);
        r.terms_.emplace(e2, c);
    }
    return r;
}

LaurentPoly LaurentPoly::coeff_of(Var v, int k) const {
    LaurentPoly r;
    for (auto &[e, c] : terms_) {
        if (e[v] == k) {
            Exp e2 = e;
            e2[v] = 0;
            r.terms_.emplace(e2, c);
        }
    }
    return r;
}

LaurentPoly pow(const LaurentPoly &p, int n) {
    if (n == 0) return LaurentPoly(Rat(1));
    if (n < 0) {
        if (!p.is_monomial()) throw DivisionByZero();
        auto &[e, c] = *p.terms().begin();
        Exp inv;
        for (int i = 0; i < kNumVars; ++i) inv[i] = static_cast<int16_t>(e[i] * n);
        Rat ic = 1 / c;
        Rat acc = 1;
        for (int i = 0; i < -n; ++i) acc *= ic;
        return LaurentPoly::monomial(acc, inv);
    }
    LaurentPoly r(Rat(1));
    LaurentPoly base = p;
    int k = n;
    while (k > 0) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

LaurentPoly LaurentPoly::substituted(Var v, const LaurentPoly &value) const {
    LaurentPoly r;
    for (auto &[e, c] : terms_) {
        Exp e2 = e;
        e2[v] = 0;
        LaurentPoly term = LaurentPoly::monomial(c, e2);
        if (e[v] != 0) term = term * pow(value, e[v]);
        r += term;
    }
    return r;
}

LaurentPoly LaurentPoly::derivative(Var v) const {
    LaurentPoly r;
    for (auto &[e, c] : terms_) {
        if (e[v] == 0) continue;
        Exp e2 = e;
        e2[v] = static_cast<int16_t>(e[v] - 1);
        r.add_term(e2, c * e[v]);
    }
    return r;
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Rat &c = it->second;
        if (!first) os << (c >= 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Rat ac = abs(c);
        bool has_var = it->first != zero_exp();
        if (ac != 1 || !has_var) os << ac.get_str();
        bool printed = !has_var || ac != 1;
        for (int i = 0; i < kNumVars; ++i) {
            if (it->first[i] == 0) continue;
            if (printed) os << "*";
            os << kVarNames[i];
            if (it->first[i] != 1) os << "^" << it->first[i];
            printed = true;
        }
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Exact division and gcd

std::optional<LaurentPoly> try_divide(const LaurentPoly &a, const LaurentPoly &b) {
    if (b.is_zero()) return std::nullopt;
    LaurentPoly rem = a, quot;
    const auto &[lbe, lbc] = b.leading();
    while (!rem.is_zero()) {
        const auto &[le, lc] = rem.leading();
        Exp qe;
        for (int i = 0; i < kNumVars; ++i) qe[i] = static_cast<int16_t>(le[i] - lbe[i]);
        LaurentPoly qterm = LaurentPoly::monomial(lc / lbc, qe);
        quot += qterm;
        rem -= qterm * b;
        if (!rem.is_zero() && !(rem.leading().first < le)) return std::nullopt;
    }
    return quot;
}

namespace {

// Univariate view in a main variable, coefficients LaurentPoly in the rest.
std::vector<LaurentPoly> uni_view(const LaurentPoly &p, Var v) {
    std::vector<LaurentPoly> c(static_cast<size_t>(p.degree(v)) + 1);
    for (auto &[e, coeff] : p.terms()) {
        Exp e2 = e;
        e2[v] = 0;
        c[static_cast<size_t>(e[v])].add_term(e2, coeff);
    }
    while (c.size() > 1 && c.back().is_zero()) c.pop_back();
    return c;
}

LaurentPoly from_uni(const std::vector<LaurentPoly> &c, Var v) {
    LaurentPoly p;
    for (size_t i = 0; i < c.size(); ++i)
        p += c[i] * LaurentPoly::variable(v, static_cast<int>(i));
    return p;
}

// Pseudo-remainder lc(b)^(delta+1) * a mod b in the main variable.
std::vector<LaurentPoly> pseudo_rem(std::vector<LaurentPoly> a,
                                    const std::vector<LaurentPoly> &b, Var /*v*/) {
    const LaurentPoly &lb = b.back();
    int db = static_cast<int>(b.size()) - 1;
    int delta = static_cast<int>(a.size()) - 1 - db;
    int steps = 0;
    while (static_cast<int>(a.size()) - 1 >= db && !(a.size() == 1 && a[0].is_zero())) {
        int da = static_cast<int>(a.size()) - 1;
        LaurentPoly la = a.back();
        for (auto &c : a) c = c * lb;
        ++steps;
        for (int i = 0; i <= db; ++i)
            a[static_cast<size_t>(da - db + i)] -= la * b[static_cast<size_t>(i)];
        while (a.size() > 1 && a.back().is_zero()) a.pop_back();
        if (a.size() == 1 && a[0].is_zero()) break;
    }
    // standard prem is lc(b)^(delta+1) * a mod b; pad missing factors
    for (; steps < delta + 1; ++steps)
        for (auto &c : a) c = c * lb;
    return a;
}

LaurentPoly gcd_impl(LaurentPoly x, LaurentPoly y);

// Content of p w.r.t. variable v: gcd of the univariate coefficients.
LaurentPoly content_wrt(const std::vector<LaurentPoly> &coeffs) {
    LaurentPoly g;
    for (auto &c : coeffs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : gcd_impl(g, c);
        if (g.is_one()) break;
    }
    return g.is_zero() ? LaurentPoly(Rat(1)) : g;
}

// fixed distinct primes per variable, for evaluation certificates; large
// enough that small integer constants in the inputs rarely make the point
// unlucky, with a second independent point as backup
constexpr long kEvalPrime[2][kNumVars] = {
    {10007, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163},
    {20011, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277}};

Rat eval_at_primes(const LaurentPoly &p, int set) {
    Rat r(0);
    for (auto &[e, c] : p.terms()) {
        Rat t = c;
        for (int i = 0; i < kNumVars; ++i) {
            int k = e[i];
            for (int j = 0; j < (k > 0 ? k : -k); ++j) {
                if (k > 0) t *= kEvalPrime[set][i];
                else t /= kEvalPrime[set][i];
            }
        }
        r += t;
    }
    return r;
}

// univariate Euclid over Q on dense coefficient vectors; an evaluation point
// only certifies coprimality (gcd degree can drop at special points, never
// rise while a leading coefficient survives), so try two points
bool coprime_at_point(const std::vector<LaurentPoly> &xa,
                      const std::vector<LaurentPoly> &ya) {
    for (int set = 0; set < 2; ++set) {
        std::vector<Rat> a, b;
        for (auto &c : xa) a.push_back(eval_at_primes(c, set));
        for (auto &c : ya) b.push_back(eval_at_primes(c, set));
        // a leading coefficient must survive the evaluation for the degree
        // argument to be sound
        if (a.back() == 0 && b.back() == 0) continue;
        auto trim = [](std::vector<Rat> &u) {
            while (u.size() > 1 && u.back() == 0) u.pop_back();
            if (u.size() == 1 && u[0] == 0) u.clear();
        };
        trim(a);
        trim(b);
        while (!b.empty()) {
            while (a.size() >= b.size() && !a.empty()) {
                Rat f = a.back() / b.back();
                size_t off = a.size() - b.size();
                for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
                a.pop_back();
                trim(a);
            }
            std::swap(a, b);
        }
        if (a.size() == 1) return true;
    }
    return false;
}

LaurentPoly strip_monomial(const LaurentPoly &p) {
    Exp m = p.min_exponents();
    Exp neg;
    for (int i = 0; i < kNumVars; ++i) neg[i] = static_cast<int16_t>(-m[i]);
    return p.shifted(neg);
}

LaurentPoly make_monic(const LaurentPoly &p) {
    if (p.is_zero()) return p;
    Rat lc = p.leading().second;
    LaurentPoly r;
    for (auto &[e, c] : p.terms()) r.add_term(e, c / lc);
    return r;
}

#ifdef QSA_GCD_DEBUG
struct GcdTimer {
    const LaurentPoly &x, &y;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    GcdTimer(const LaurentPoly &a, const LaurentPoly &b) : x(a), y(b) {}
    ~GcdTimer() {
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                        .count();
        if (dt > 0.05)
            std::fprintf(stderr, "gcd %.3fs\n  x=%s\n  y=%s\n", dt, x.str().c_str(),
                         y.str().c_str());
    }
};
#endif

// gcd of true polynomials (min exponent 0), primitive PRS.
LaurentPoly gcd_impl(LaurentPoly x, LaurentPoly y) {
#ifdef QSA_GCD_DEBUG
    GcdTimer timer_(x, y);
#endif
    if (x.is_zero()) return make_monic(y);
    if (y.is_zero()) return make_monic(x);
    if (x.is_constant() || y.is_constant()) return LaurentPoly(Rat(1));

    Var v = VQ;
    for (int i = 0; i < kNumVars; ++i) {
        if (x.depends_on(static_cast<Var>(i)) || y.depends_on(static_cast<Var>(i))) {
            v = static_cast<Var>(i);
            break;
        }
    }
    auto xa = uni_view(x, v), ya = uni_view(y, v);
#ifdef QSA_GCD_DEBUG
    auto tc = std::chrono::steady_clock::now();
#endif
    LaurentPoly cx = content_wrt(xa), cy = content_wrt(ya);
    LaurentPoly cont = gcd_impl(cx, cy);
#ifdef QSA_GCD_DEBUG
    {
        double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - tc).count();
        if (dt > 0.02)
            std::fprintf(stderr, "  content phase %.3fs (var %d, sizes %zu %zu)\n", dt,
                         (int)v, xa.size(), ya.size());
    }
#endif

    auto prim = [&](std::vector<LaurentPoly> &u, const LaurentPoly &c) {
        for (auto &coeff : u) {
            auto d = try_divide(coeff, c);
            if (!d) throw std::logic_error("gcd: inexact division");
            coeff = *d;
        }
    };
    prim(xa, cx);
    prim(ya, cy);

    // one exact evaluation certifies the (very common) coprime case and
    // skips the remainder sequence entirely
#ifdef QSA_GCD_DEBUG
    {
        auto t1 = std::chrono::steady_clock::now();
        bool cp = coprime_at_point(xa, ya);
        double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
        std::fprintf(stderr, "  coprime_at_point %.3fs -> %d (var %d, sizes %zu %zu)\n",
                     dt, cp, (int)v, xa.size(), ya.size());
        if (cp) return make_monic(cont);
    }
#else
    if (coprime_at_point(xa, ya)) return make_monic(cont);
#endif

    if (xa.size() < ya.size()) std::swap(xa, ya);
    // subresultant PRS (Brown) to control coefficient swell
    LaurentPoly sg(Rat(1)), sh(Rat(1));
    while (true) {
        if (ya.size() == 1) {
            if (!ya[0].is_zero()) xa = {LaurentPoly(Rat(1))}; // coprime in v
            break;
        }
        int delta = static_cast<int>(xa.size()) - static_cast<int>(ya.size());
        auto r = pseudo_rem(xa, ya, v);
        LaurentPoly divisor = sg * pow(sh, delta);
        for (auto &c : r) {
            auto d = try_divide(c, divisor);
            if (!d) throw std::logic_error("gcd: inexact division");
            c = std::move(*d);
        }
        sg = ya.back();
        if (delta >= 1) {
            // sh = sg^delta / sh^(delta-1)
            LaurentPoly nh = pow(sg, delta);
            auto d = try_divide(nh, pow(sh, delta - 1));
            if (!d) throw std::logic_error("gcd: inexact division");
            sh = std::move(*d);
        } // delta == 0: sh unchanged
        xa = std::move(ya);
        ya = std::move(r);
        if (ya.size() == 1 && ya[0].is_zero()) break;
    }
    LaurentPoly g = from_uni(xa, v);
    LaurentPoly cg = content_wrt(uni_view(g, v));
    auto d = try_divide(g, cg);
    if (d) g = *d;
    return make_monic(g * cont);
}

} // namespace

LaurentPoly poly_gcd(const LaurentPoly &x, const LaurentPoly &y) {
    if (x.is_zero() && y.is_zero()) return LaurentPoly();
    LaurentPoly a = strip_monomial(x), b = strip_monomial(y);
    if (a.is_constant() || b.is_constant()) return LaurentPoly(Rat(1));
    if (b < a) std::swap(a, b);
    // identical gcd calls repeat heavily across matrix entries
    thread_local std::map<std::pair<LaurentPoly, LaurentPoly>, LaurentPoly> cache;
    auto key = std::make_pair(a, b);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    LaurentPoly g = gcd_impl(a, b);
    if (cache.size() > 4096) cache.clear();
    cache.emplace(std::move(key), g);
    return g;
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(LaurentPoly n, LaurentPoly d)
    : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw DivisionByZero();
    canonicalize();
}

void RationalFunction::canonicalize() {
    if (num_.is_zero()) {
        den_ = LaurentPoly(Rat(1));
        return;
    }
    // Move all monomial content onto the numerator; keep den a polynomial
    // with per-variable minimum exponent 0.
    Exp mn = num_.min_exponents(), md = den_.min_exponents();
    Exp sn, sd;
    for (int i = 0; i < kNumVars; ++i) {
        sn[i] = static_cast<int16_t>(-mn[i]);
        sd[i] = static_cast<int16_t>(-md[i]);
    }
    LaurentPoly np = num_.shifted(sn), dp = den_.shifted(sd);
    LaurentPoly g = poly_gcd(np, dp);
    if (!g.is_one() && !g.is_zero()) {
        auto n2 = try_divide(np, g), d2 = try_divide(dp, g);
        if (!n2 || !d2) throw std::logic_error("canonicalize: inexact division");
        np = *n2;
        dp = *d2;
    }
    Rat lc = dp.leading().second;
    LaurentPoly dd;
    for (auto &[e, c] : dp.terms()) dd.add_term(e, c / lc);
    Exp shift;
    for (int i = 0; i < kNumVars; ++i) shift[i] = static_cast<int16_t>(mn[i] - md[i]);
    LaurentPoly nn;
    for (auto &[e, c] : np.terms()) {
        Exp e2;
        for (int i = 0; i < kNumVars; ++i) e2[i] = static_cast<int16_t>(e[i] + shift[i]);
        nn.add_term(e2, c / lc);
    }
    num_ = std::move(nn);
    den_ = std::move(dd);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction &o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) return RationalFunction(num_ + o.num_, den_);
    // combine over the lcm to keep the final gcd small
    LaurentPoly g = poly_gcd(den_, o.den_);
    if (g.is_one() || g.is_zero())
        return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    LaurentPoly e1 = *try_divide(den_, g), e2 = *try_divide(o.den_, g);
    return RationalFunction(num_ * e2 + o.num_ * e1, den_ * e2);
}

RationalFunction RationalFunction::operator-(const RationalFunction &o) const {
    return *this + (-o);
}

namespace {

// divide a Laurent polynomial by a true polynomial that divides its
// polynomial part exactly
LaurentPoly laurent_div(const LaurentPoly &a, const LaurentPoly &b) {
    Exp m = a.min_exponents();
    Exp neg;
    for (int i = 0; i < kNumVars; ++i) neg[i] = static_cast<int16_t>(-m[i]);
    auto d = try_divide(a.shifted(neg), b);
    if (!d) throw std::logic_error("laurent_div: inexact division");
    return d->shifted(m);
}

} // namespace

RationalFunction RationalFunction::operator*(const RationalFunction &o) const {
    if (is_zero() || o.is_zero()) return RationalFunction();
    // cross-cancel before multiplying to keep the final gcd cheap
    LaurentPoly n1 = num_, d1 = den_, n2 = o.num_, d2 = o.den_;
    LaurentPoly g1 = poly_gcd(n1, d2);
    if (!g1.is_one() && !g1.is_zero()) {
        n1 = laurent_div(n1, g1);
        d2 = laurent_div(d2, g1);
    }
    LaurentPoly g2 = poly_gcd(n2, d1);
    if (!g2.is_one() && !g2.is_zero()) {
        n2 = laurent_div(n2, g2);
        d1 = laurent_div(d1, g2);
    }
    return RationalFunction(n1 * n2, d1 * d2);
}

RationalFunction RationalFunction::operator/(const RationalFunction &o) const {
    if (o.is_zero()) throw DivisionByZero();
    return *this * o.inverse();
}

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw DivisionByZero();
    return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::substituted(Var v, const LaurentPoly &value) const {
    // Clear negative exponents of v first so general (non-monomial) values
    // are allowed.
    LaurentPoly n = num_, d = den_;
    int lo = std::min(n.low_degree(v), d.low_degree(v));
    if (lo < 0) {
        LaurentPoly m = LaurentPoly::variable(v, -lo);
        n = n * m;
        d = d * m;
    }
    return RationalFunction(n.substituted(v, value), d.substituted(v, value));
}

RationalFunction RationalFunction::derivative(Var v) const {
    return RationalFunction(num_.derivative(v) * den_ - num_ * den_.derivative(v),
                            den_ * den_);
}

std::string RationalFunction::str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ---------------------------------------------------------------------------
// One-sided expansion

RationalFunction LaurentSeries::at(int k) const {
    if (k < lo || k > hi) throw ExpansionError("series coefficient outside window");
    auto it = coeffs.find(k);
    return it == coeffs.end() ? RationalFunction() : it->second;
}

LaurentSeries expand(const RationalFunction &f, Var var, Direction dir, int lo, int hi) {
    if (lo > hi) throw ExpansionError("empty window");
    LaurentSeries s;
    s.var = var;
    s.dir = dir;
    s.lo = lo;
    s.hi = hi;
    if (f.is_zero()) return s;

    // Split num and den by powers of var; coefficients live in the rest.
    auto split = [&](const LaurentPoly &p) {
        std::map<int, RationalFunction> m;
        for (auto &[e, c] : p.terms()) {
            Exp e2 = e;
            e2[var] = 0;
            RationalFunction mono(LaurentPoly::monomial(c, e2));
            auto it = m.find(e[var]);
            if (it == m.end()) m.emplace(e[var], mono);
            else it->second += mono;
        }
        for (auto it = m.begin(); it != m.end();)
            it = it->second.is_zero() ? m.erase(it) : std::next(it);
        return m;
    };
    auto nm = split(f.num()), dm = split(f.den());
    if (dm.empty()) throw DivisionByZero();

    // Extremal denominator coefficient in the chosen direction.
    int dext = (dir == Direction::AroundInfinity) ? dm.rbegin()->first : dm.begin()->first;
    RationalFunction dlead = dm.at(dext);
    if (dlead.is_zero()) throw ExpansionError("extremal denominator coefficient is zero");

    // Solve series * den = num coefficient-by-coefficient.
    std::map<int, RationalFunction> out;
    auto coeff_num = [&](int s_) {
        auto it = nm.find(s_);
        return it == nm.end() ? RationalFunction() : it->second;
    };
    if (dir == Direction::AroundInfinity) {
        int ntop = nm.empty() ? lo + dext : nm.rbegin()->first;
        int ktop = ntop - dext;
        for (int k = ktop; k >= lo; --k) {
            RationalFunction acc = coeff_num(k + dext);
            for (auto &[i, di] : dm) {
                if (i == dext) continue;
                int j = k + dext - i; // series exponent already computed (j > k)
                auto it = out.find(j);
                if (it != out.end()) acc -= it->second * di;
            }
            RationalFunction ck = acc / dlead;
            if (!ck.is_zero()) out.emplace(k, ck);
        }
    } else {
        int nbot = nm.empty() ? hi + dext : nm.begin()->first;
        int kbot = nbot - dext;
        for (int k = kbot; k <= hi; ++k) {
            RationalFunction acc = coeff_num(k + dext);
            for (auto &[i, di] : dm) {
                if (i == dext) continue;
                int j = k + dext - i; // j < k, already computed
                auto it = out.find(j);
                if (it != out.end()) acc -= it->second * di;
            }
            RationalFunction ck = acc / dlead;
            if (!ck.is_zero()) out.emplace(k, ck);
        }
    }
    for (auto &[k, c] : out)
        if (k >= lo && k <= hi) s.coeffs.emplace(k, c);
    return s;
}

} // namespace qsa
