#include "qsa/rmatrix.hpp"

#include <sstream>

namespace qsa {

namespace {

int lin(int a, int b, int d) { return (a - 1) * d + (b - 1); }

RationalFunction rm_coeff_diag_odd() {
    // (wq - zq^-1)/(zq - wq^-1)
    LaurentPoly z = LaurentPoly::variable(VZ), w = LaurentPoly::variable(VW);
    LaurentPoly q = LaurentPoly::variable(VQ), qi = LaurentPoly::variable(VQ, -1);
    return RationalFunction(w * q - z * qi, z * q - w * qi);
}

RationalFunction rm_coeff_offdiag() {
    LaurentPoly z = LaurentPoly::variable(VZ), w = LaurentPoly::variable(VW);
    LaurentPoly q = LaurentPoly::variable(VQ), qi = LaurentPoly::variable(VQ, -1);
    return RationalFunction(z - w, z * q - w * qi);
}

RationalFunction rm_coeff_lower(bool upper_z) {
    LaurentPoly z = LaurentPoly::variable(VZ), w = LaurentPoly::variable(VW);
    LaurentPoly q = LaurentPoly::variable(VQ), qi = LaurentPoly::variable(VQ, -1);
    return RationalFunction((upper_z ? z : w) * (q - qi), z * q - w * qi);
}

// The five-term sum; `swap` exchanges the two tensor factors of each term
// (the structural definition of R21).
GradedMatrix five_sum(const ParityStructure &ps, bool swap) {
    const int d = ps.dim();
    GradedMatrix r(Space::power(ps, 2));
    // term coeff * E^a_b (x) E^c_d contributes R^{(a,c)}_{(b,d)} = coeff
    auto put = [&](int a, int b, int c, int da, const RationalFunction &v) {
        if (swap) r.at(lin(da, b, d), lin(c, a, d)) += v;
        else r.at(lin(b, da, d), lin(a, c, d)) += v;
    };
    for (int i = 1; i <= d; ++i)
        put(i, i, i, i,
            i <= ps.m ? RationalFunction(1) : rm_coeff_diag_odd());
    RationalFunction off = rm_coeff_offdiag();
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            if (i == j) continue;
            int sgn = ps.parity(i) * ps.parity(j);
            put(i, i, j, j, sgn ? -off : off);
        }
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            if (i == j) continue;
            // E^j_i (x) E^i_j with z-coefficient for i<j, w-coefficient for i>j
            put(j, i, i, j, rm_coeff_lower(i < j));
        }
    return r;
}

} // namespace

GradedMatrix build_rtilde(const ParityStructure &ps) { return five_sum(ps, false); }

GradedMatrix build_r(const ParityStructure &ps) {
    return tilde_toggle(build_rtilde(ps), ps);
}

GradedMatrix build_r_swapped(const ParityStructure &ps) {
    return tilde_toggle(five_sum(ps, true), ps);
}

GradedMatrix plain_swap(const ParityStructure &ps) {
    const int d = ps.dim();
    GradedMatrix r(Space::power(ps, 2));
    for (int a = 1; a <= d; ++a)
        for (int b = 1; b <= d; ++b) r.at(lin(a, b, d), lin(b, a, d)) = RationalFunction(1);
    return r;
}

GradedMatrix subst_ratio_args(const GradedMatrix &R, const LaurentPoly &z_to,
                              const LaurentPoly &w_to) {
    // simultaneous substitution via a scratch variable free in all inputs
    Var scratch = kNumVars;
    for (Var v : {VT, VB, VA, VG3, VG2, VG1}) {
        bool used = z_to.depends_on(v) || w_to.depends_on(v);
        for (int i = 0; !used && i < R.dim(); ++i)
            for (int j = 0; !used && j < R.dim(); ++j)
                used = R.at(i, j).depends_on(v);
        if (!used) {
            scratch = v;
            break;
        }
    }
    if (scratch == kNumVars) throw std::logic_error("no free scratch variable");
    return R.substituted(VZ, LaurentPoly::variable(scratch))
        .substituted(VW, w_to)
        .substituted(scratch, z_to);
}

namespace {

std::string entry_report(const GradedMatrix::Diff &d) {
    std::ostringstream os;
    os << "entry (" << d.row << "," << d.col << "): " << d.lhs.str()
       << " != " << d.rhs.str();
    return os.str();
}

CheckResult compare(const GradedMatrix &a, const GradedMatrix &b) {
    auto diff = GradedMatrix::first_difference(a, b);
    if (!diff) return CheckResult::ok();
    return CheckResult::fail(entry_report(*diff));
}

} // namespace

CheckResult check_pt_symmetry(const GradedMatrix &R, const ParityStructure &ps) {
    GradedMatrix p = perm_matrix(ps);
    return compare(p * R * p, build_r_swapped(ps));
}

CheckResult check_unitarity(const GradedMatrix &R, const ParityStructure &ps) {
    GradedMatrix r21 = subst_ratio_args(build_r_swapped(ps), LaurentPoly::variable(VW),
                                        LaurentPoly::variable(VZ));
    return compare(R * r21, GradedMatrix::identity(R.space()));
}

CheckResult check_weight_conservation(const GradedMatrix &R, const ParityStructure &ps) {
    const int d = ps.dim();
    for (int a = 1; a <= d; ++a)
        for (int b = 1; b <= d; ++b)
            for (int ap = 1; ap <= d; ++ap)
                for (int bp = 1; bp <= d; ++bp) {
                    if (R.at(lin(a, b, d), lin(ap, bp, d)).is_zero()) continue;
                    int tot = ps.parity(a) + ps.parity(b) + ps.parity(ap) + ps.parity(bp);
                    if (tot % 2) {
                        std::ostringstream os;
                        os << "odd-parity entry at lower (" << a << "," << b
                           << ") upper (" << ap << "," << bp << ")";
                        return CheckResult::fail(os.str());
                    }
                }
    return CheckResult::ok();
}

CheckResult check_ybe_on(const GradedMatrix &Rzw, const GradedMatrix &Rz,
                         const GradedMatrix &Rw, const ParityStructure &ps,
                         YbeForm form) {
    const int d = ps.dim();
    if (form == YbeForm::ComponentSigns) {
        auto P = [&](int i) { return ps.parity(i); };
        auto at2 = [&](const GradedMatrix &M, int la, int lb, int ua, int ub) {
            return M.at(lin(la, lb, d), lin(ua, ub, d));
        };
        const int n3 = d * d * d;
        GradedMatrix lhs(Space::power(ps, 3)), rhs(Space::power(ps, 3));
        for (int a = 1; a <= d; ++a)
            for (int b = 1; b <= d; ++b)
                for (int g = 1; g <= d; ++g)
                    for (int ap = 1; ap <= d; ++ap)
                        for (int bp = 1; bp <= d; ++bp)
                            for (int gp = 1; gp <= d; ++gp) {
                                int row = ((a - 1) * d + (b - 1)) * d + (g - 1);
                                // LHS: sum over a',b',g' with free uppers a2,b2,g2
                                const RationalFunction &x = at2(Rzw, a, b, ap, bp);
                                if (!x.is_zero()) {
                                    int s0 = P(a) * P(b) + P(g) * P(ap) + P(gp) * P(bp);
                                    for (int a2 = 1; a2 <= d; ++a2) {
                                        const RationalFunction &y = at2(Rz, ap, g, a2, gp);
                                        if (y.is_zero()) continue;
                                        for (int b2 = 1; b2 <= d; ++b2)
                                            for (int g2 = 1; g2 <= d; ++g2) {
                                                const RationalFunction &zc =
                                                    at2(Rw, bp, gp, b2, g2);
                                                if (zc.is_zero()) continue;
                                                int col = ((a2 - 1) * d + (b2 - 1)) * d +
                                                          (g2 - 1);
                                                RationalFunction v = x * y * zc;
                                                lhs.at(row, col) +=
                                                    (s0 % 2) ? -v : v;
                                            }
                                    }
                                }
                                // RHS
                                const RationalFunction &xw = at2(Rw, b, g, bp, gp);
                                if (!xw.is_zero()) {
                                    int s1 = P(b) * P(g) + P(gp) * P(a) + P(bp) * P(ap);
                                    for (int g2 = 1; g2 <= d; ++g2) {
                                        const RationalFunction &y = at2(Rz, a, gp, ap, g2);
                                        if (y.is_zero()) continue;
                                        for (int a2 = 1; a2 <= d; ++a2)
                                            for (int b2 = 1; b2 <= d; ++b2) {
                                                const RationalFunction &zc =
                                                    at2(Rzw, ap, bp, a2, b2);
                                                if (zc.is_zero()) continue;
                                                int col = ((a2 - 1) * d + (b2 - 1)) * d +
                                                          (g2 - 1);
                                                RationalFunction v = xw * y * zc;
                                                rhs.at(row, col) +=
                                                    (s1 % 2) ? -v : v;
                                            }
                                    }
                                }
                            }
        (void)n3;
        return compare(lhs, rhs);
    }

    // operator forms: plain embeddings, slots (1,3) via plain swap conjugation
    GradedMatrix a12 = embed_plain(Rzw, ps, 1, 3);
    GradedMatrix s23 = embed_plain(plain_swap(ps), ps, 2, 3);
    GradedMatrix a13 = s23 * embed_plain(Rz, ps, 1, 3) * s23;
    GradedMatrix a23 = embed_plain(Rw, ps, 2, 3);
    if (form == YbeForm::TildePlain)
        return compare(a12 * a13 * a23, a23 * a13 * a12);
    // ThetaOperator: dress the slot-(2,3) factor with theta on slots (1,2)
    GradedMatrix t12 = theta_on_slots(ps, 1, 2, 3);
    GradedMatrix c = t12 * a23 * t12;
    return compare(a12 * a13 * c, c * a13 * a12);
}

CheckResult check_ybe(const ParityStructure &ps, YbeForm form) {
    GradedMatrix base =
        (form == YbeForm::TildePlain) ? build_rtilde(ps) : build_r(ps);
    LaurentPoly one = LaurentPoly::constant(1), z = LaurentPoly::variable(VZ),
                w = LaurentPoly::variable(VW);
    GradedMatrix rz = base.substituted(VW, one);            // argument z
    GradedMatrix rw = base.substituted(VW, one).substituted(VZ, w); // argument w
    return check_ybe_on(base, rz, rw, ps, form);
}

} // namespace qsa
