#pragma once

// Evaluation representation of the RLL exchange algebra at level zero:
// L(z) = R(z/a) with the auxiliary space first, the defining exchange
// relation, the seven theta-conjugated equations deduced from it, and the
// Hopf structure (coproduct, counit, antipode) on the L generators.

#include "qsa/rmatrix.hpp"

namespace qsa {

// the flat generating matrix on aux (x) V: R(z, w) with w evaluated at
// the representation point (default: the parameter a)
GradedMatrix eval_L(const ParityStructure &ps, const LaurentPoly &point);
GradedMatrix eval_L(const ParityStructure &ps);

// operator-valued block L^i_j (1-based aux indices; rows are outputs, so
// block (i,j) of the displayed matrix), acting on the quantum space W
GradedMatrix L_block(const GradedMatrix &Lflat, const Space &W, int i, int j);
GradedMatrix from_blocks(const std::vector<std::vector<GradedMatrix>> &blk,
                         const Space &aux, const Space &W);

// R(z/w) L1(z) theta L2(w) theta = theta L2(w) theta L1(z) R(z/w) on
// aux (x) aux (x) W, all products plain matrix products. Lflat must be the
// flat matrix on aux (x) W in the variable z.
CheckResult check_rll_on(const GradedMatrix &Lflat, const Space &W,
                         const ParityStructure &ps);
// the defining relation for the fundamental evaluation representation
CheckResult check_rll_def(const ParityStructure &ps);

// the seven deduced exchange equations (labels LLR2..LLR8); at level zero
// the +/- decorations coincide, so some pairs share one computation
std::vector<std::pair<std::string, CheckResult>>
check_rll_deduced(const ParityStructure &ps);

// R21(z/w) := R(w/z)^{-1} equals the structurally swapped matrix
CheckResult check_r21_is_inverse(const ParityStructure &ps);

// coproduct Delta(L)^i_j = sum_k L^i_k (x) L^k_j (graded Kronecker) at two
// evaluation points satisfies the defining relation again. The identity is
// polynomial in the two points, so exact numeric points keep the rational
// arithmetic tractable; callers should verify at least two distinct pairs.
CheckResult check_L_coproduct(const ParityStructure &ps,
                              const LaurentPoly &pa = LaurentPoly::constant(2),
                              const LaurentPoly &pb = LaurentPoly::constant(3));
// counit degenerations: one tensor leg set to 1 recovers L itself
CheckResult check_L_counit(const ParityStructure &ps);
// antipode S(L) = L^{-1}: both composition orders collapse to the counit
CheckResult check_L_antipode(const ParityStructure &ps);

// L depends on z and the evaluation point only through their ratio
CheckResult check_L_rescaling(const ParityStructure &ps);

} // namespace qsa
