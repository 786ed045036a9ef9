#include "qsa/distributions.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace qsa {

namespace {

long sat(long x) {
    if (x <= kNegInf) return kNegInf;
    if (x >= kPosInf) return kPosInf;
    return x;
}

} // namespace

Ival ival_add(const Ival &a, const Ival &b) {
    if (a.empty() || b.empty()) return {1, 0};
    long lo = (a.lo <= kNegInf || b.lo <= kNegInf) ? kNegInf : sat(a.lo + b.lo);
    long hi = (a.hi >= kPosInf || b.hi >= kPosInf) ? kPosInf : sat(a.hi + b.hi);
    return {lo, hi};
}

Ival ival_neg(const Ival &a) {
    if (a.empty()) return a;
    long lo = (a.hi >= kPosInf) ? kNegInf : -a.hi;
    long hi = (a.lo <= kNegInf) ? kPosInf : -a.lo;
    return {lo, hi};
}

Ival ival_sub_point(long e, const Ival &a) { return ival_add(Ival::point(e), ival_neg(a)); }

// ---------------------------------------------------------------------------

struct DistBuilder {
    static FormalDistribution make(std::vector<FormalDistribution::VarData> vd,
                                   std::vector<FormalDistribution::Diag> diag,
                                   std::map<FormalDistribution::Key, GradedMatrix> c) {
        FormalDistribution d;
        d.vd_ = std::move(vd);
        d.diag_ = std::move(diag);
        d.c_ = std::move(c);
        d.vars_.clear();
        for (auto &x : d.vd_) d.vars_.push_back(x.v);
        d.prune();
        return d;
    }
};

int FormalDistribution::var_index(Var v) const {
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == v) return static_cast<int>(i);
    return -1;
}

void FormalDistribution::prune() {
    for (auto it = c_.begin(); it != c_.end();)
        it = it->second.is_zero() ? c_.erase(it) : std::next(it);
}

Ival FormalDistribution::support(Var v) const {
    int i = var_index(v);
    return i < 0 ? Ival::point(0) : vd_[static_cast<size_t>(i)].support;
}

Ival FormalDistribution::known(Var v) const {
    int i = var_index(v);
    return i < 0 ? Ival::all() : vd_[static_cast<size_t>(i)].known;
}

FormalDistribution FormalDistribution::constant(const GradedMatrix &c) {
    std::map<Key, GradedMatrix> m;
    if (!c.is_zero()) m.emplace(Key{}, c);
    return DistBuilder::make({}, {}, std::move(m));
}

FormalDistribution FormalDistribution::scalar_constant(const RationalFunction &c) {
    GradedMatrix m(Space{{0}});
    m.at(0, 0) = c;
    return constant(m);
}

FormalDistribution FormalDistribution::delta(Var av, Var bv, const RationalFunction &mono,
                                             long guard) {
    if (!mono.den().is_one() || !mono.num().is_monomial() ||
        mono.num().depends_on(av) || mono.num().depends_on(bv))
        throw std::logic_error("delta ratio must be an invertible monomial");
    std::vector<VarData> vd;
    std::vector<Diag> dg;
    bool a_first = av < bv;
    vd.push_back({a_first ? av : bv, Ival::all(), {-guard, guard}});
    vd.push_back({a_first ? bv : av, Ival::all(), {-guard, guard}});
    dg.push_back({0, 1, 0});
    std::map<Key, GradedMatrix> c;
    for (long k = -guard; k <= guard; ++k) {
        GradedMatrix m(Space{{0}});
        m.at(0, 0) = RationalFunction(pow(mono.num(), static_cast<int>(k)));
        Key key(2);
        key[a_first ? 0 : 1] = static_cast<int>(-k);
        key[a_first ? 1 : 0] = static_cast<int>(k);
        c.emplace(std::move(key), std::move(m));
    }
    return DistBuilder::make(std::move(vd), std::move(dg), std::move(c));
}

FormalDistribution FormalDistribution::ratio_series(Var av, Var bv,
                                                    const RationalFunction &f,
                                                    Direction dir, long guard) {
    if (f.depends_on(av) || f.depends_on(bv))
        throw std::logic_error("ratio_series kernel must use the scratch variable only");
    if (f.is_zero()) return FormalDistribution();
    LaurentSeries s = expand(f, VT, dir, static_cast<int>(-guard), static_cast<int>(guard));
    // exact one-sided support bound in the ratio exponent
    Ival tsup = (dir == Direction::AroundZero)
                    ? Ival{f.num().low_degree(VT) - f.den().low_degree(VT), kPosInf}
                    : Ival{kNegInf, f.num().degree(VT) - f.den().degree(VT)};
    std::vector<VarData> vd;
    std::vector<Diag> dg;
    bool a_first = av < bv;
    // av carries -k when bv carries k
    vd.push_back({a_first ? av : bv, a_first ? ival_neg(tsup) : tsup, {-guard, guard}});
    vd.push_back({a_first ? bv : av, a_first ? tsup : ival_neg(tsup), {-guard, guard}});
    dg.push_back({0, 1, 0});
    std::map<Key, GradedMatrix> c;
    for (auto &[k, cf] : s.coeffs) {
        if (cf.is_zero()) continue;
        GradedMatrix m(Space{{0}});
        m.at(0, 0) = cf;
        Key key(2);
        key[a_first ? 0 : 1] = -k;
        key[a_first ? 1 : 0] = k;
        c.emplace(std::move(key), std::move(m));
    }
    return DistBuilder::make(std::move(vd), std::move(dg), std::move(c));
}

namespace {

// split the split-vars out of a rational coefficient (they must appear
// polynomially, i.e. not in the denominator)
void split_coeff(const RationalFunction &f, const std::vector<Var> &split,
                 std::map<std::vector<int>, RationalFunction> &out) {
    for (Var s : split)
        if (f.den().depends_on(s))
            throw std::logic_error("split variable appears in a denominator");
    for (auto &[e, cf] : f.num().terms()) {
        std::vector<int> key;
        Exp rest = e;
        for (Var s : split) {
            key.push_back(rest[s]);
            rest[s] = 0;
        }
        RationalFunction piece(LaurentPoly::monomial(cf, rest), f.den());
        auto it = out.find(key);
        if (it == out.end()) out.emplace(std::move(key), piece);
        else it->second += piece;
    }
}

} // namespace

FormalDistribution FormalDistribution::expansion(const GradedMatrix &M, Var v,
                                                 Direction dir, long lo, long hi,
                                                 const std::vector<Var> &split) {
    // distribution variables: v plus split vars, in enum order
    std::vector<Var> all{v};
    for (Var s : split) all.push_back(s);
    std::sort(all.begin(), all.end());

    long top = kNegInf, bot = kPosInf;
    std::map<Key, GradedMatrix> c;
    for (int r = 0; r < M.dim(); ++r)
        for (int col = 0; col < M.dim(); ++col) {
            const RationalFunction &f = M.at(r, col);
            if (f.is_zero()) continue;
            top = std::max(top, static_cast<long>(f.num().degree(v) - f.den().degree(v)));
            bot = std::min(bot,
                           static_cast<long>(f.num().low_degree(v) - f.den().low_degree(v)));
            LaurentSeries s = expand(f, v, dir, static_cast<int>(lo), static_cast<int>(hi));
            for (auto &[k, coeff] : s.coeffs) {
                std::map<std::vector<int>, RationalFunction> pieces;
                split_coeff(coeff, split, pieces);
                for (auto &[skey, val] : pieces) {
                    Key key(all.size(), 0);
                    for (size_t i = 0; i < all.size(); ++i) {
                        if (all[i] == v) key[i] = k;
                        else {
                            for (size_t j = 0; j < split.size(); ++j)
                                if (split[j] == all[i]) key[i] = skey[j];
                        }
                    }
                    auto it = c.find(key);
                    if (it == c.end()) {
                        GradedMatrix zero(M.space());
                        it = c.emplace(key, zero).first;
                    }
                    it->second.at(r, col) += val;
                }
            }
        }
    std::vector<VarData> vd;
    for (Var x : all) {
        if (x == v) {
            Ival sup = (dir == Direction::AroundInfinity) ? Ival{kNegInf, top}
                                                          : Ival{bot, kPosInf};
            vd.push_back({x, sup, {lo, hi}});
        } else {
            vd.push_back({x, Ival::all(), Ival::all()});
        }
    }
    return DistBuilder::make(std::move(vd), {}, std::move(c));
}

FormalDistribution FormalDistribution::two_sided_difference(const GradedMatrix &M, Var v,
                                                            long lo, long hi,
                                                            const std::vector<Var> &split) {
    FormalDistribution d =
        expansion(M, v, Direction::AroundInfinity, lo, hi, split) -
        expansion(M, v, Direction::AroundZero, lo, hi, split);
    // the difference is genuinely two-sided
    int i = d.var_index(v);
    if (i >= 0) d.vd_[static_cast<size_t>(i)].support = Ival::all();
    return d;
}

FormalDistribution FormalDistribution::polynomial(const LaurentPoly &p,
                                                  const std::vector<Var> &svars) {
    std::vector<Var> all = svars;
    std::sort(all.begin(), all.end());
    std::map<Key, GradedMatrix> c;
    std::vector<Ival> sup(all.size(), Ival{1, 0});
    for (auto &[e, cf] : p.terms()) {
        Key key(all.size());
        Exp rest = e;
        for (size_t i = 0; i < all.size(); ++i) {
            key[i] = rest[all[i]];
            rest[all[i]] = 0;
            sup[i] = sup[i].hull(Ival::point(key[i]));
        }
        auto it = c.find(key);
        if (it == c.end()) {
            GradedMatrix m(Space{{0}});
            m.at(0, 0) = RationalFunction(LaurentPoly::monomial(cf, rest));
            c.emplace(std::move(key), std::move(m));
        } else {
            it->second.at(0, 0) += RationalFunction(LaurentPoly::monomial(cf, rest));
        }
    }
    std::vector<VarData> vd;
    for (size_t i = 0; i < all.size(); ++i)
        vd.push_back({all[i], sup[i].empty() ? Ival::point(0) : sup[i], Ival::all()});
    return DistBuilder::make(std::move(vd), {}, std::move(c));
}

GradedMatrix FormalDistribution::at(const std::map<Var, long> &e) const {
    Key key(vars_.size(), 0);
    for (auto &[v, k] : e) {
        int i = var_index(v);
        if (i < 0) {
            if (k != 0) {
                // constant in v: any nonzero exponent has zero coefficient
                return c_.empty() ? GradedMatrix(Space{{0}})
                                  : GradedMatrix(c_.begin()->second.space());
            }
            continue;
        }
        key[static_cast<size_t>(i)] = static_cast<int>(k);
    }
    bool in_known = true, in_support = true;
    for (size_t i = 0; i < vd_.size(); ++i) {
        if (!vd_[i].known.contains(key[i])) in_known = false;
        if (!vd_[i].support.contains(key[i])) in_support = false;
    }
    Space sp = c_.empty() ? Space{{0}} : c_.begin()->second.space();
    if (!in_known && in_support) {
        std::ostringstream os;
        os << "coefficient outside known window at";
        for (size_t i = 0; i < vd_.size(); ++i) os << " " << var_name(vd_[i].v) << "^" << key[i];
        throw OutOfWindow(os.str());
    }
    auto it = c_.find(key);
    return it == c_.end() ? GradedMatrix(sp) : it->second;
}

namespace {

using VD = FormalDistribution::VarData;
using DG = FormalDistribution::Diag;
using Key = FormalDistribution::Key;

// align a key over `from` vars to a key over `to` vars (to is a superset)
Key align(const Key &k, const std::vector<Var> &from, const std::vector<Var> &to) {
    Key out(to.size(), 0);
    size_t j = 0;
    for (size_t i = 0; i < to.size(); ++i)
        if (j < from.size() && from[j] == to[i]) out[i] = k[j++];
    return out;
}

std::vector<Var> union_vars(const std::vector<Var> &a, const std::vector<Var> &b) {
    std::vector<Var> u = a;
    u.insert(u.end(), b.begin(), b.end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

GradedMatrix coeff_mul(const GradedMatrix &a, const GradedMatrix &b) {
    if (a.dim() == 1 && b.dim() == 1) {
        GradedMatrix m(Space{{0}});
        m.at(0, 0) = a.at(0, 0) * b.at(0, 0);
        return m;
    }
    if (a.dim() == 1) return b * a.at(0, 0);
    if (b.dim() == 1) return a * b.at(0, 0);
    if (!(a.space() == b.space())) throw std::logic_error("coefficient space mismatch");
    return a * b;
}

std::string key_str(const Key &k, const std::vector<Var> &vars) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < vars.size(); ++i)
        os << (i ? " " : "") << var_name(vars[i]) << "^" << k[i];
    os << ")";
    return os.str();
}

} // namespace

FormalDistribution FormalDistribution::operator+(const FormalDistribution &o) const {
    std::vector<Var> u = union_vars(vars_, o.vars_);
    std::vector<VD> vd;
    for (Var v : u) {
        Ival sup = support(v).hull(o.support(v));
        Ival kn = known(v).meet(o.known(v));
        vd.push_back({v, sup, kn});
    }
    // keep a diagonal constraint only if it provably holds for both operands
    std::vector<DG> dg;
    auto idx = [&](Var v) {
        for (size_t i = 0; i < u.size(); ++i)
            if (u[i] == v) return static_cast<int>(i);
        return -1;
    };
    auto consider = [&](const FormalDistribution &self, const FormalDistribution &other) {
        for (auto &d : self.diag_) {
            Var va = self.vars_[static_cast<size_t>(d.i)];
            Var vb = self.vars_[static_cast<size_t>(d.j)];
            bool ok = false;
            Ival sa = other.support(va), sb = other.support(vb);
            if (sa.lo == sa.hi && sb.lo == sb.hi && sa.lo + sb.lo == d.s) ok = true;
            for (auto &d2 : other.diag_)
                if (other.vars_[static_cast<size_t>(d2.i)] == va &&
                    other.vars_[static_cast<size_t>(d2.j)] == vb && d2.s == d.s)
                    ok = true;
            if (ok) dg.push_back({idx(va), idx(vb), d.s});
        }
    };
    consider(*this, o);
    consider(o, *this);
    std::sort(dg.begin(), dg.end(), [](const DG &x, const DG &y) {
        return std::tie(x.i, x.j, x.s) < std::tie(y.i, y.j, y.s);
    });
    dg.erase(std::unique(dg.begin(), dg.end(),
                         [](const DG &x, const DG &y) {
                             return x.i == y.i && x.j == y.j && x.s == y.s;
                         }),
             dg.end());

    std::map<Key, GradedMatrix> c;
    for (auto &[k, m] : c_) c.emplace(align(k, vars_, u), m);
    for (auto &[k, m] : o.c_) {
        Key kk = align(k, o.vars_, u);
        auto it = c.find(kk);
        if (it == c.end()) c.emplace(std::move(kk), m);
        else it->second = it->second + m;
    }
    // only keep coefficients inside the (possibly shrunk) known box
    for (auto it = c.begin(); it != c.end();) {
        bool in = true;
        for (size_t i = 0; i < u.size(); ++i)
            if (!vd[i].known.contains(it->first[i])) in = false;
        it = in ? std::next(it) : c.erase(it);
    }
    return DistBuilder::make(std::move(vd), std::move(dg), std::move(c));
}

FormalDistribution FormalDistribution::operator-() const {
    FormalDistribution d = *this;
    for (auto &[k, m] : d.c_) m = -m;
    return d;
}

FormalDistribution FormalDistribution::operator-(const FormalDistribution &o) const {
    return *this + (-o);
}

FormalDistribution FormalDistribution::scaled(const RationalFunction &f) const {
    for (Var v : vars_)
        if (f.depends_on(v)) throw std::logic_error("scaling by a spectral-dependent factor");
    FormalDistribution d = *this;
    for (auto &[k, m] : d.c_) m = m * f;
    d.prune();
    return d;
}

FormalDistribution dist_mul(const FormalDistribution &a, const FormalDistribution &b,
                            const std::map<Var, Ival> &out) {
    std::vector<Var> u = union_vars(a.vars_, b.vars_);
    std::vector<Ival> s1, s2, k1, k2, range, kn;
    for (Var v : u) {
        s1.push_back(a.support(v));
        s2.push_back(b.support(v));
        k1.push_back(a.known(v));
        k2.push_back(b.known(v));
        auto it = out.find(v);
        if (it != out.end()) {
            if (!it->second.finite()) throw std::logic_error("output window must be finite");
            range.push_back(it->second);
            kn.push_back(it->second);
        } else {
            Ival s = ival_add(s1.back(), s2.back());
            if (s.finite() || s.empty()) {
                range.push_back(s);
                kn.push_back(Ival::all());
            } else {
                Ival k = k1.back().meet(k2.back());
                if (!k.finite())
                    throw std::logic_error("cannot infer output window for variable " +
                                           std::string(var_name(v)));
                range.push_back(k);
                kn.push_back(k);
            }
        }
    }
    const size_t nv = u.size();

    // completeness check for every requested exponent
    std::vector<long> e(nv);
    std::function<void(size_t)> walk = [&](size_t pos) {
        if (pos == nv) {
            std::vector<Ival> M(nv);
            for (size_t i = 0; i < nv; ++i)
                M[i] = s1[i].meet(ival_sub_point(e[i], s2[i]));
            for (int pass = 0; pass < 3; ++pass) {
                auto apply = [&](const FormalDistribution &d, bool second) {
                    for (auto &dgc : d.diag_) {
                        Var va = d.vars_[static_cast<size_t>(dgc.i)];
                        Var vb = d.vars_[static_cast<size_t>(dgc.j)];
                        size_t ia = 0, ib = 0;
                        for (size_t i = 0; i < nv; ++i) {
                            if (u[i] == va) ia = i;
                            if (u[i] == vb) ib = i;
                        }
                        long s = dgc.s;
                        // first factor: m_a + m_b = s; second factor:
                        // (e_a - m_a) + (e_b - m_b) = s
                        long ss = second ? (e[ia] + e[ib] - s) : s;
                        M[ia] = M[ia].meet(ival_sub_point(ss, M[ib]));
                        M[ib] = M[ib].meet(ival_sub_point(ss, M[ia]));
                    }
                };
                apply(a, false);
                apply(b, true);
            }
            bool empty = false;
            for (auto &m : M)
                if (m.empty()) empty = true;
            if (empty) return;
            for (size_t i = 0; i < nv; ++i) {
                std::ostringstream os;
                os << "product coefficient at " << var_name(u[i]) << "^" << e[i];
                if (!M[i].finite())
                    throw InsufficientGuard(os.str() + " needs an infinite mode sum");
                if (!k1[i].contains(M[i]))
                    throw InsufficientGuard(os.str() + " needs left factor outside its window");
                Ival refl = {e[i] - M[i].hi, e[i] - M[i].lo};
                if (!k2[i].contains(refl))
                    throw InsufficientGuard(os.str() + " needs right factor outside its window");
            }
            return;
        }
        if (range[pos].empty()) return;
        for (long x = range[pos].lo; x <= range[pos].hi; ++x) {
            e[pos] = x;
            walk(pos + 1);
        }
    };
    walk(0);

    // accumulate stored-by-stored products that land in the requested box
    std::map<Key, GradedMatrix> c;
    for (auto &[ka, ma] : a.c_) {
        Key kau = align(ka, a.vars_, u);
        for (auto &[kb, mb] : b.c_) {
            Key kbu = align(kb, b.vars_, u);
            Key kk(nv);
            bool in = true;
            for (size_t i = 0; i < nv; ++i) {
                kk[i] = kau[i] + kbu[i];
                if (!range[i].contains(kk[i])) in = false;
            }
            if (!in) continue;
            GradedMatrix prod = coeff_mul(ma, mb);
            auto it = c.find(kk);
            if (it == c.end()) c.emplace(std::move(kk), std::move(prod));
            else it->second = it->second + prod;
        }
    }

    std::vector<VD> vd;
    for (size_t i = 0; i < nv; ++i) vd.push_back({u[i], ival_add(s1[i], s2[i]), kn[i]});
    return DistBuilder::make(std::move(vd), {}, std::move(c));
}

FormalDistribution dist_mul(const FormalDistribution &a, const FormalDistribution &b) {
    return dist_mul(a, b, {});
}

CheckResult dist_equal(const FormalDistribution &a, const FormalDistribution &b) {
    std::vector<Var> u = union_vars(a.vars_, b.vars_);
    std::vector<Ival> region;
    for (Var v : u) region.push_back(a.known(v).meet(b.known(v)));
    std::map<Key, char> keys;
    for (auto &[k, m] : a.c_) keys[align(k, a.vars_, u)] = 1;
    for (auto &[k, m] : b.c_) keys[align(k, b.vars_, u)] = 1;
    for (auto &[k, tag] : keys) {
        bool in = true;
        for (size_t i = 0; i < u.size(); ++i)
            if (!region[i].contains(k[i])) in = false;
        if (!in) continue;
        std::map<Var, long> e;
        for (size_t i = 0; i < u.size(); ++i) e[u[i]] = k[i];
        GradedMatrix ma = a.at(e), mb = b.at(e);
        if (ma.dim() != mb.dim())
            return CheckResult::fail("coefficient dimension mismatch at " + key_str(k, u));
        if (ma != mb) {
            auto d = GradedMatrix::first_difference(ma, mb);
            std::ostringstream os;
            os << "coefficient mismatch at " << key_str(k, u);
            if (d)
                os << " entry (" << d->row << "," << d->col << "): " << d->lhs.str()
                   << " != " << d->rhs.str();
            return CheckResult::fail(os.str());
        }
    }
    return CheckResult::ok();
}

// ---------------------------------------------------------------------------
// delta-supported canonical form

namespace {

using QPoly = std::map<int, Rat>; // univariate polynomial over the rationals

QPoly qpoly_normalize(QPoly p) {
    for (auto it = p.begin(); it != p.end();)
        it = (it->second == 0) ? p.erase(it) : std::next(it);
    return p;
}

QPoly qpoly_rem(QPoly a, const QPoly &b) {
    while (!a.empty() && !b.empty() && a.rbegin()->first >= b.rbegin()->first) {
        int shift = a.rbegin()->first - b.rbegin()->first;
        Rat f = a.rbegin()->second / b.rbegin()->second;
        for (auto &[e, c] : b) {
            a[e + shift] -= f * c;
        }
        a = qpoly_normalize(a);
    }
    return a;
}

QPoly qpoly_gcd(QPoly a, QPoly b) {
    a = qpoly_normalize(a);
    b = qpoly_normalize(b);
    while (!b.empty()) {
        QPoly r = qpoly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::vector<long> small_divisors(const mpz_class &n0) {
    mpz_class n = abs(n0);
    std::vector<long> out;
    if (n == 0) return out;
    for (long d = 1; d <= 200000 && mpz_class(d) * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            mpz_class q = n / d;
            if (q.fits_slong_p()) out.push_back(q.get_si());
        }
    if (mpz_class(200000) * 200000 <= n) {
        // keep at least the trivial candidates for very large constants
        if (n.fits_slong_p()) out.push_back(n.get_si());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Rat> rational_roots(QPoly p) {
    p = qpoly_normalize(p);
    std::vector<Rat> roots;
    if (p.empty()) return roots;
    int low = p.begin()->first;
    if (low > 0) { // root at zero is not a valid monomial scale
        QPoly q;
        for (auto &[e, c] : p) q[e - low] = c;
        p = std::move(q);
    }
    if (p.rbegin()->first == 0) return roots;
    // clear denominators
    mpz_class l = 1;
    for (auto &[e, c] : p) l = l * c.get_den() / gcd(l, c.get_den());
    mpz_class c0 = Rat(p.begin()->second * l).get_num();
    mpz_class cn = Rat(p.rbegin()->second * l).get_num();
    for (long pd : small_divisors(c0))
        for (long qd : small_divisors(cn))
            for (int sgn : {1, -1}) {
                Rat cand(sgn * pd, qd);
                cand.canonicalize();
                // Horner evaluation on the sparse polynomial
                Rat val = 0;
                int prev = p.rbegin()->first;
                for (auto it = p.rbegin(); it != p.rend(); ++it) {
                    for (int k = 0; k < prev - it->first; ++k) val *= cand;
                    val += it->second;
                    prev = it->first;
                }
                for (int k = 0; k < prev; ++k) val *= cand;
                if (val == 0) roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// candidate monomials M such that a root kappa*M might exist: the ratio of
// any two coefficient monomials at v-degrees i > j, taken to the 1/(i-j)
std::vector<LaurentPoly> candidate_monomials(const LaurentPoly &p, Var v) {
    int hi = p.degree(v), lo = p.low_degree(v);
    std::vector<std::pair<int, LaurentPoly>> slices;
    for (int i = lo; i <= hi; ++i) {
        LaurentPoly c = p.coeff_of(v, i);
        if (!c.is_zero()) slices.emplace_back(i, c);
    }
    std::vector<LaurentPoly> out;
    std::set<std::string> seen;
    for (auto &[i, ci] : slices)
        for (auto &[j, cj] : slices) {
            if (i <= j) continue;
            int k = i - j;
            for (auto &[eh, ch] : ci.terms())
                for (auto &[el, cl] : cj.terms()) {
                    Exp d = zero_exp();
                    bool ok = true;
                    for (int x = 0; x < kNumVars; ++x) {
                        int diff = el[x] - eh[x];
                        if (diff % k) ok = false;
                        else d[x] = static_cast<int16_t>(diff / k);
                    }
                    if (!ok) continue;
                    LaurentPoly m = LaurentPoly::monomial(Rat(1), d);
                    if (seen.insert(m.str()).second) out.push_back(m);
                }
        }
    return out;
}

std::optional<LaurentPoly> find_one_root(const LaurentPoly &p, Var v) {
    if (p.depends_on(VT)) throw std::logic_error("scratch variable busy in root search");
    for (const LaurentPoly &M : candidate_monomials(p, v)) {
        // substitute v -> t*M, group by parameter monomial, intersect roots
        LaurentPoly sub = p.substituted(v, LaurentPoly::variable(VT) * M);
        std::map<Exp, QPoly> groups;
        for (auto &[e, c] : sub.terms()) {
            Exp rest = e;
            int te = e[VT];
            rest[VT] = 0;
            groups[rest][te] = c;
        }
        QPoly g;
        bool first = true;
        for (auto &[e, q] : groups) {
            if (first) {
                g = q;
                first = false;
            } else {
                g = qpoly_gcd(g, q);
            }
            if (g.size() == 1) break;
        }
        for (const Rat &kappa : rational_roots(g)) {
            LaurentPoly mu = M * LaurentPoly(kappa);
            if (p.substituted(v, mu).is_zero()) return mu;
        }
    }
    return std::nullopt;
}

} // namespace

std::vector<std::pair<LaurentPoly, int>> monomial_roots(const LaurentPoly &den, Var v) {
    std::vector<std::pair<LaurentPoly, int>> out;
    LaurentPoly cur = den;
    // strip the monomial v-content (pole at zero contributes no delta)
    {
        Exp shift = zero_exp();
        shift[v] = static_cast<int16_t>(-cur.min_exponents()[v]);
        cur = cur.shifted(shift);
    }
    while (cur.degree(v) >= 1) {
        auto mu = find_one_root(cur, v);
        if (!mu) throw PoleExtractionError("no monomial root of " + cur.str());
        LaurentPoly lin = LaurentPoly::variable(v) - *mu;
        int mult = 0;
        while (true) {
            auto q = try_divide(cur, lin);
            if (!q) break;
            cur = *q;
            ++mult;
        }
        if (mult == 0) throw PoleExtractionError("verified root failed exact division");
        out.emplace_back(*mu, mult);
    }
    std::sort(out.begin(), out.end(),
              [](auto &x, auto &y) { return x.first.str() < y.first.str(); });
    return out;
}

DeltaSupported delta_form(const GradedMatrix &K, Var v) {
    DeltaSupported out;
    out.var = v;
    std::map<std::pair<std::string, int>, std::pair<LaurentPoly, GradedMatrix>> acc;
    for (int r = 0; r < K.dim(); ++r)
        for (int col = 0; col < K.dim(); ++col) {
            const RationalFunction &f = K.at(r, col);
            if (f.is_zero() || !f.den().depends_on(v)) continue;
            for (auto &[mu, mult] : monomial_roots(f.den(), v)) {
                // T = f*(v-mu)^mult is regular at mu; partial-fraction
                // coefficients are Taylor coefficients of T at mu
                RationalFunction T =
                    f * RationalFunction(pow(LaurentPoly::variable(v) - mu, mult));
                Rat fact(1);
                for (int i = 0; i < mult; ++i) {
                    if (i > 0) {
                        T = T.derivative(v);
                        fact *= i;
                    }
                    RationalFunction cj = T.substituted(v, mu) / RationalFunction(fact);
                    if (cj.is_zero()) continue;
                    int order = mult - i;
                    auto key = std::make_pair(mu.str(), order);
                    auto it = acc.find(key);
                    if (it == acc.end()) {
                        GradedMatrix m(K.space());
                        it = acc.emplace(key, std::make_pair(mu, m)).first;
                    }
                    it->second.second.at(r, col) += cj;
                }
            }
        }
    for (auto &[key, val] : acc)
        if (!val.second.is_zero()) out.terms.push_back({val.first, key.second, val.second});
    return out;
}

FormalDistribution DeltaSupported::to_distribution(long lo, long hi) const {
    Space sp = terms.empty() ? Space{{0}} : terms.front().coeff.space();
    std::map<FormalDistribution::Key, GradedMatrix> c;
    for (long e = lo; e <= hi; ++e) {
        GradedMatrix m(sp);
        for (const Term &t : terms) {
            // coefficient of v^e in tsd(1/(v-mu)^r): binom(-e-1, r-1) mu^{-e-r}
            long n = -e - 1;
            Rat b(1);
            for (int i = 0; i < t.order - 1; ++i) b *= Rat(n - i);
            for (int i = 1; i < t.order; ++i) b /= Rat(i);
            if (b == 0) continue;
            RationalFunction scale =
                RationalFunction(LaurentPoly(b)) *
                RationalFunction(pow(t.pole, static_cast<int>(-e - t.order)));
            m = m + t.coeff * scale;
        }
        if (!m.is_zero()) c.emplace(FormalDistribution::Key{static_cast<int>(e)}, m);
    }
    std::vector<FormalDistribution::VarData> vd{{var, Ival::all(), {lo, hi}}};
    return DistBuilder::make(std::move(vd), {}, std::move(c));
}

DeltaSupported DeltaSupported::operator+(const DeltaSupported &o) const {
    DeltaSupported out;
    out.var = var;
    std::map<std::pair<std::string, int>, std::pair<LaurentPoly, GradedMatrix>> acc;
    auto feed = [&](const std::vector<Term> &ts) {
        for (const Term &t : ts) {
            auto key = std::make_pair(t.pole.str(), t.order);
            auto it = acc.find(key);
            if (it == acc.end()) acc.emplace(key, std::make_pair(t.pole, t.coeff));
            else it->second.second = it->second.second + t.coeff;
        }
    };
    feed(terms);
    feed(o.terms);
    for (auto &[key, val] : acc)
        if (!val.second.is_zero()) out.terms.push_back({val.first, key.second, val.second});
    return out;
}

DeltaSupported DeltaSupported::operator-() const {
    DeltaSupported out = *this;
    for (auto &t : out.terms) t.coeff = -t.coeff;
    return out;
}

DeltaSupported combine_rational(const GradedMatrix &g, const DeltaSupported &x,
                                Combine how) {
    DeltaSupported out;
    out.var = x.var;
    std::map<std::pair<std::string, int>, std::pair<LaurentPoly, GradedMatrix>> acc;
    for (const DeltaSupported::Term &t : x.terms) {
        GradedMatrix d = g;
        Rat fact(1);
        for (int i = 0; i < t.order; ++i) {
            if (i > 0) {
                GradedMatrix nd(d.space());
                for (int r = 0; r < d.dim(); ++r)
                    for (int c2 = 0; c2 < d.dim(); ++c2) nd.at(r, c2) = d.at(r, c2).derivative(x.var);
                d = nd;
                fact *= i;
            }
            GradedMatrix gi = d.substituted(x.var, t.pole) * RationalFunction(Rat(1) / fact);
            GradedMatrix combined =
                (how == Combine::MulLeft)    ? gi * t.coeff
                : (how == Combine::MulRight) ? t.coeff * gi
                : (how == Combine::KronLeft) ? graded_kron(gi, t.coeff)
                                             : graded_kron(t.coeff, gi);
            if (combined.is_zero()) continue;
            int order = t.order - i;
            auto key = std::make_pair(t.pole.str(), order);
            auto it = acc.find(key);
            if (it == acc.end()) acc.emplace(key, std::make_pair(t.pole, combined));
            else it->second.second = it->second.second + combined;
        }
    }
    for (auto &[key, val] : acc)
        if (!val.second.is_zero()) out.terms.push_back({val.first, key.second, val.second});
    return out;
}

} // namespace qsa
