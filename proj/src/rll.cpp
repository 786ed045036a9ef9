#include "qsa/rll.hpp"

#include <sstream>

namespace qsa {

namespace {

// Lflat on aux (x) W -> aux (x) aux (x) W, identity on the second aux slot
GradedMatrix expand_aux1(const GradedMatrix &Lf, const Space &aux, const Space &W) {
    Space full = Space::tensor(aux, Space::tensor(aux, W));
    GradedMatrix out(full);
    int dA = aux.dim(), dW = W.dim();
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j)
            for (int u = 0; u < dW; ++u)
                for (int v = 0; v < dW; ++v) {
                    const RationalFunction &x = Lf.at(i * dW + u, j * dW + v);
                    if (x.is_zero()) continue;
                    for (int k = 0; k < dA; ++k)
                        out.at((i * dA + k) * dW + u, (j * dA + k) * dW + v) = x;
                }
    return out;
}

// theta on the two aux slots of aux (x) aux (x) W
GradedMatrix theta_aux(const Space &aux, const Space &W) {
    Space full = Space::tensor(aux, Space::tensor(aux, W));
    GradedMatrix out(full);
    int dA = aux.dim(), dW = W.dim();
    for (int i = 0; i < dA; ++i)
        for (int k = 0; k < dA; ++k)
            for (int u = 0; u < dW; ++u) {
                int idx = (i * dA + k) * dW + u;
                out.at(idx, idx) =
                    RationalFunction((aux.parity(i) & aux.parity(k)) ? -1 : 1);
            }
    return out;
}

CheckResult compare(const GradedMatrix &lhs, const GradedMatrix &rhs,
                    const std::string &what) {
    auto d = GradedMatrix::first_difference(lhs, rhs);
    if (!d) return CheckResult::ok();
    std::ostringstream os;
    os << what << ": entry (" << d->row << "," << d->col << "): " << d->lhs.str()
       << " != " << d->rhs.str();
    return CheckResult::fail(os.str());
}

} // namespace

GradedMatrix eval_L(const ParityStructure &ps, const LaurentPoly &point) {
    return build_r(ps).substituted(VW, point);
}

GradedMatrix eval_L(const ParityStructure &ps) {
    return eval_L(ps, LaurentPoly::variable(VA));
}

GradedMatrix L_block(const GradedMatrix &Lflat, const Space &W, int i, int j) {
    int dW = W.dim();
    GradedMatrix out(W);
    for (int u = 0; u < dW; ++u)
        for (int v = 0; v < dW; ++v)
            out.at(u, v) = Lflat.at((i - 1) * dW + u, (j - 1) * dW + v);
    return out;
}

GradedMatrix from_blocks(const std::vector<std::vector<GradedMatrix>> &blk,
                         const Space &aux, const Space &W) {
    int dA = aux.dim(), dW = W.dim();
    GradedMatrix out(Space::tensor(aux, W));
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j)
            for (int u = 0; u < dW; ++u)
                for (int v = 0; v < dW; ++v)
                    out.at(i * dW + u, j * dW + v) =
                        blk[static_cast<size_t>(i)][static_cast<size_t>(j)].at(u, v);
    return out;
}

CheckResult check_rll_on(const GradedMatrix &Lflat, const Space &W,
                         const ParityStructure &ps) {
    Space aux = Space::fundamental(ps);
    GradedMatrix Lz = Lflat;
    GradedMatrix Lw = Lflat.substituted(VZ, LaurentPoly::variable(VW));
    GradedMatrix R12 = plain_kron(build_r(ps), GradedMatrix::identity(W));
    GradedMatrix L1 = expand_aux1(Lz, aux, W);
    GradedMatrix L2 = plain_kron(GradedMatrix::identity(aux), Lw);
    GradedMatrix Th = theta_aux(aux, W);
    GradedMatrix lhs = R12 * L1 * Th * L2 * Th;
    GradedMatrix rhs = Th * L2 * Th * L1 * R12;
    return compare(lhs, rhs, "exchange relation");
}

CheckResult check_rll_def(const ParityStructure &ps) {
    return check_rll_on(eval_L(ps), Space::fundamental(ps), ps);
}

std::vector<std::pair<std::string, CheckResult>>
check_rll_deduced(const ParityStructure &ps) {
    Space aux = Space::fundamental(ps);
    GradedMatrix Lz = eval_L(ps);
    GradedMatrix Lw = Lz.substituted(VZ, LaurentPoly::variable(VW));
    GradedMatrix Lzi = Lz.inverse(), Lwi = Lw.inverse();
    GradedMatrix R21 = build_r_swapped(ps);
    GradedMatrix Ia = GradedMatrix::identity(aux);
    GradedMatrix L1w = expand_aux1(Lw, aux, aux);
    GradedMatrix L1wi = expand_aux1(Lwi, aux, aux);
    GradedMatrix L2z = plain_kron(Ia, Lz);
    GradedMatrix L2zi = plain_kron(Ia, Lzi);
    GradedMatrix R = plain_kron(R21, Ia); // R21 acts on the two aux slots
    GradedMatrix Th = theta_aux(aux, aux);

    CheckResult llr2 =
        compare(R * Th * L2z * Th * L1w, L1w * Th * L2z * Th * R, "LLR2");
    CheckResult llr4 =
        compare(Th * L2zi * Th * L1wi * R, R * L1wi * Th * L2zi * Th, "LLR4");
    CheckResult llr6 =
        compare(L1wi * R * Th * L2z * Th, Th * L2z * Th * R * L1wi, "LLR6");

    // at level zero the +/- decorated variants coincide with the undecorated
    // equations, so the pairs share their verification
    return {{"LLR2", llr2}, {"LLR3", llr2}, {"LLR4", llr4}, {"LLR5", llr4},
            {"LLR6", llr6}, {"LLR7", llr6}, {"LLR8", llr6}};
}

CheckResult check_r21_is_inverse(const ParityStructure &ps) {
    GradedMatrix rwz =
        subst_ratio_args(build_r(ps), LaurentPoly::variable(VW), LaurentPoly::variable(VZ));
    return compare(rwz.inverse(), build_r_swapped(ps), "R21 = R(w/z)^{-1}");
}

namespace {

GradedMatrix coproduct_flat(const GradedMatrix &La, const GradedMatrix &Lb,
                            const ParityStructure &ps) {
    Space v = Space::fundamental(ps);
    Space w = Space::tensor(v, v);
    int d = ps.dim();
    std::vector<std::vector<GradedMatrix>> blk(
        static_cast<size_t>(d), std::vector<GradedMatrix>(static_cast<size_t>(d)));
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            GradedMatrix acc(w);
            for (int k = 1; k <= d; ++k)
                acc = acc + graded_kron(L_block(La, v, i, k), L_block(Lb, v, k, j));
            blk[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] = acc;
        }
    return from_blocks(blk, v, w);
}

} // namespace

CheckResult check_L_coproduct(const ParityStructure &ps, const LaurentPoly &pa,
                              const LaurentPoly &pb) {
    GradedMatrix La = eval_L(ps, pa);
    GradedMatrix Lb = eval_L(ps, pb);
    Space w = Space::power(ps, 2);
    return check_rll_on(coproduct_flat(La, Lb, ps), w, ps);
}

CheckResult check_L_counit(const ParityStructure &ps) {
    Space v = Space::fundamental(ps);
    Space w = Space::tensor(v, v);
    GradedMatrix La = eval_L(ps);
    GradedMatrix Iflat = plain_kron(GradedMatrix::identity(v), GradedMatrix::identity(v));
    // (id (x) counit): second leg evaluates to 1
    GradedMatrix right = coproduct_flat(La, Iflat, ps);
    // expected: L with an identity glued on the second quantum slot
    int d = ps.dim(), dW = w.dim();
    GradedMatrix expect_r(Space::tensor(v, w)), expect_l(Space::tensor(v, w));
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            GradedMatrix b = L_block(La, v, i, j);
            GradedMatrix br = graded_kron(b, GradedMatrix::identity(v));
            GradedMatrix bl = graded_kron(GradedMatrix::identity(v), b);
            for (int u = 0; u < dW; ++u)
                for (int vv = 0; vv < dW; ++vv) {
                    expect_r.at((i - 1) * dW + u, (j - 1) * dW + vv) = br.at(u, vv);
                    expect_l.at((i - 1) * dW + u, (j - 1) * dW + vv) = bl.at(u, vv);
                }
        }
    CheckResult r = compare(right, expect_r, "(id x counit) coproduct");
    if (!r.pass) return r;
    GradedMatrix left = coproduct_flat(Iflat, La, ps);
    return compare(left, expect_l, "(counit x id) coproduct");
}

CheckResult check_L_antipode(const ParityStructure &ps) {
    Space v = Space::fundamental(ps);
    GradedMatrix L = eval_L(ps);
    GradedMatrix Li = L.inverse();
    int d = ps.dim();
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            GradedMatrix s1(v), s2(v);
            for (int k = 1; k <= d; ++k) {
                s1 = s1 + L_block(Li, v, i, k) * L_block(L, v, k, j);
                s2 = s2 + L_block(L, v, i, k) * L_block(Li, v, k, j);
            }
            GradedMatrix eps =
                (i == j) ? GradedMatrix::identity(v) : GradedMatrix::zero(v);
            CheckResult r = compare(s1, eps, "m(S x id) coproduct");
            if (!r.pass) return r;
            r = compare(s2, eps, "m(id x S) coproduct");
            if (!r.pass) return r;
        }
    return CheckResult::ok();
}

CheckResult check_L_rescaling(const ParityStructure &ps) {
    GradedMatrix L = eval_L(ps);
    LaurentPoly t = LaurentPoly::variable(VT);
    GradedMatrix scaled = L.substituted(VZ, t * LaurentPoly::variable(VZ))
                              .substituted(VA, t * LaurentPoly::variable(VA));
    return compare(scaled, L, "ratio dependence");
}

} // namespace qsa
