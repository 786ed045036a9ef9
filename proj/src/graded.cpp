#include "qsa/graded.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qsa {

namespace {
std::atomic<bool> g_parallel{true};
}

void set_parallel_kernels(bool on) { g_parallel.store(on); }
bool parallel_kernels_enabled() {
#ifdef _OPENMP
    return g_parallel.load();
#else
    return false;
#endif
}

Space Space::fundamental(const ParityStructure &ps) {
    Space s;
    s.parities.reserve(static_cast<size_t>(ps.dim()));
    for (int i = 1; i <= ps.dim(); ++i) s.parities.push_back(ps.parity(i));
    return s;
}

Space Space::tensor(const Space &a, const Space &b) {
    Space s;
    s.parities.reserve(a.parities.size() * b.parities.size());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j)
            s.parities.push_back((a.parity(i) + b.parity(j)) % 2);
    return s;
}

Space Space::power(const ParityStructure &ps, int slots) {
    Space f = fundamental(ps);
    Space s;
    s.parities = {0};
    for (int k = 0; k < slots; ++k) s = tensor(s, f);
    return s;
}

GradedMatrix GradedMatrix::identity(const Space &s) {
    GradedMatrix m(s);
    for (int i = 0; i < m.dim(); ++i) m.at(i, i) = RationalFunction(1);
    return m;
}

GradedMatrix GradedMatrix::scalar(const Space &s, const RationalFunction &c) {
    GradedMatrix m(s);
    for (int i = 0; i < m.dim(); ++i) m.at(i, i) = c;
    return m;
}

GradedMatrix GradedMatrix::unit(const Space &s, int a, int b) {
    GradedMatrix m(s);
    m.at(b - 1, a - 1) = RationalFunction(1);
    return m;
}

bool GradedMatrix::is_zero() const {
    for (const auto &x : e_)
        if (!x.is_zero()) return false;
    return true;
}

bool GradedMatrix::operator==(const GradedMatrix &o) const {
    return space_ == o.space_ && e_ == o.e_;
}

GradedMatrix GradedMatrix::operator+(const GradedMatrix &o) const {
    GradedMatrix r(space_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

GradedMatrix GradedMatrix::operator-(const GradedMatrix &o) const {
    GradedMatrix r(space_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

GradedMatrix GradedMatrix::operator-() const {
    GradedMatrix r(space_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
    return r;
}

GradedMatrix GradedMatrix::operator*(const RationalFunction &c) const {
    GradedMatrix r(space_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * c;
    return r;
}

GradedMatrix matmul_serial(const GradedMatrix &a, const GradedMatrix &b) {
    const int n = a.dim();
    GradedMatrix r(a.space());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RationalFunction acc;
            for (int k = 0; k < n; ++k) {
                if (a.at(i, k).is_zero() || b.at(k, j).is_zero()) continue;
                acc += a.at(i, k) * b.at(k, j);
            }
            r.at(i, j) = acc;
        }
    return r;
}

GradedMatrix GradedMatrix::operator*(const GradedMatrix &o) const {
    const int n = dim();
#ifdef _OPENMP
    if (g_parallel.load() && n >= 8) {
        GradedMatrix r(space_);
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                RationalFunction acc;
                for (int k = 0; k < n; ++k) {
                    if (at(i, k).is_zero() || o.at(k, j).is_zero()) continue;
                    acc += at(i, k) * o.at(k, j);
                }
                r.at(i, j) = acc;
            }
        return r;
    }
#endif
    return matmul_serial(*this, o);
}

GradedMatrix GradedMatrix::inverse() const {
    const int n = dim();
    // augmented Gauss-Jordan over the exact rational function field
    std::vector<std::vector<RationalFunction>> a(
        static_cast<size_t>(n), std::vector<RationalFunction>(static_cast<size_t>(2 * n)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = at(i, j);
        a[i][static_cast<size_t>(n + i)] = RationalFunction(1);
    }
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!a[i][col].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) throw SingularMatrix();
        std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(piv)]);
        RationalFunction inv = a[col][col].inverse();
        for (int j = col; j < 2 * n; ++j)
            if (!a[col][j].is_zero()) a[col][j] *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            RationalFunction f = a[i][col];
            for (int j = col; j < 2 * n; ++j)
                if (!a[col][j].is_zero()) a[i][j] -= f * a[col][j];
        }
    }
    GradedMatrix r(space_);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = a[i][static_cast<size_t>(n + j)];
    return r;
}

GradedMatrix GradedMatrix::substituted(Var v, const LaurentPoly &value) const {
    GradedMatrix r(space_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].substituted(v, value);
    return r;
}

std::optional<GradedMatrix::Diff> GradedMatrix::first_difference(const GradedMatrix &a,
                                                                 const GradedMatrix &b) {
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (a.at(i, j) != b.at(i, j)) return Diff{i, j, a.at(i, j), b.at(i, j)};
    return std::nullopt;
}

GradedMatrix graded_kron(const GradedMatrix &A, const GradedMatrix &B) {
    const int dA = A.dim(), dB = B.dim();
    GradedMatrix r(Space::tensor(A.space(), B.space()));
    for (int ra = 0; ra < dA; ++ra)
        for (int ca = 0; ca < dA; ++ca) {
            const RationalFunction &x = A.at(ra, ca);
            if (x.is_zero()) continue;
            for (int rb = 0; rb < dB; ++rb)
                for (int cb = 0; cb < dB; ++cb) {
                    const RationalFunction &y = B.at(rb, cb);
                    if (y.is_zero()) continue;
                    int sign = ((B.space().parity(rb) + B.space().parity(cb)) *
                                A.space().parity(ca)) %
                               2;
                    RationalFunction v = x * y;
                    r.at(ra * dB + rb, ca * dB + cb) = sign ? -v : v;
                }
        }
    return r;
}

GradedMatrix plain_kron(const GradedMatrix &A, const GradedMatrix &B) {
    const int dA = A.dim(), dB = B.dim();
    GradedMatrix r(Space::tensor(A.space(), B.space()));
    for (int ra = 0; ra < dA; ++ra)
        for (int ca = 0; ca < dA; ++ca) {
            const RationalFunction &x = A.at(ra, ca);
            if (x.is_zero()) continue;
            for (int rb = 0; rb < dB; ++rb)
                for (int cb = 0; cb < dB; ++cb) {
                    const RationalFunction &y = B.at(rb, cb);
                    if (y.is_zero()) continue;
                    r.at(ra * dB + rb, ca * dB + cb) = x * y;
                }
        }
    return r;
}

GradedMatrix perm_matrix(const ParityStructure &ps) {
    const int d = ps.dim();
    GradedMatrix r(Space::power(ps, 2));
    // P^{a'b'}_{ab} = delta_{a b'} delta_{a' b} (-1)^{[a'][b']}
    for (int a = 1; a <= d; ++a)
        for (int b = 1; b <= d; ++b) {
            int sign = ps.parity(b) * ps.parity(a);
            RationalFunction v(sign ? -1 : 1);
            r.at((a - 1) * d + (b - 1), (b - 1) * d + (a - 1)) = v;
        }
    return r;
}

GradedMatrix theta_matrix(const ParityStructure &ps) {
    const int d = ps.dim();
    GradedMatrix r(Space::power(ps, 2));
    for (int a = 1; a <= d; ++a)
        for (int b = 1; b <= d; ++b) {
            int sign = ps.parity(a) * ps.parity(b);
            r.at((a - 1) * d + (b - 1), (a - 1) * d + (b - 1)) =
                RationalFunction(sign ? -1 : 1);
        }
    return r;
}

GradedMatrix tilde_toggle(const GradedMatrix &R, const ParityStructure &ps) {
    const int d = ps.dim();
    GradedMatrix r = R;
    for (int a = 1; a <= d; ++a)
        for (int b = 1; b <= d; ++b) {
            if (!(ps.parity(a) * ps.parity(b))) continue;
            int row = (a - 1) * d + (b - 1);
            for (int col = 0; col < d * d; ++col) r.at(row, col) = -r.at(row, col);
        }
    return r;
}

namespace {
int slots_of(const GradedMatrix &A, const ParityStructure &ps) {
    int d = ps.dim(), k = 0, n = 1;
    while (n < A.dim()) {
        n *= d;
        ++k;
    }
    if (n != A.dim()) throw std::logic_error("matrix dim is not a tensor power");
    return k == 0 ? 1 : k;
}
} // namespace

GradedMatrix embed(const GradedMatrix &A, const ParityStructure &ps, int slot,
                   int total) {
    const int k = slots_of(A, ps);
    GradedMatrix r = A;
    if (slot > 1) r = graded_kron(GradedMatrix::identity(Space::power(ps, slot - 1)), r);
    int after = total - (slot - 1) - k;
    if (after > 0) r = graded_kron(r, GradedMatrix::identity(Space::power(ps, after)));
    return r;
}

GradedMatrix embed_plain(const GradedMatrix &A, const ParityStructure &ps, int slot,
                         int total) {
    const int k = slots_of(A, ps);
    GradedMatrix r = A;
    if (slot > 1) r = plain_kron(GradedMatrix::identity(Space::power(ps, slot - 1)), r);
    int after = total - (slot - 1) - k;
    if (after > 0) r = plain_kron(r, GradedMatrix::identity(Space::power(ps, after)));
    return r;
}

GradedMatrix theta_on_slots(const ParityStructure &ps, int s1, int s2, int total) {
    const int d = ps.dim();
    GradedMatrix r(Space::power(ps, total));
    const int n = r.dim();
    for (int idx = 0; idx < n; ++idx) {
        // digits of idx, first slot most significant
        int p1 = 0, p2 = 0, rem = idx;
        for (int s = total; s >= 1; --s) {
            int digit = rem % d + 1;
            rem /= d;
            if (s == s1) p1 = ps.parity(digit);
            if (s == s2) p2 = ps.parity(digit);
        }
        r.at(idx, idx) = RationalFunction((p1 * p2) ? -1 : 1);
    }
    return r;
}

} // namespace qsa
