#pragma once

// The spectral R-matrix of U_q[gl(m|n)] in two independent spectral
// variables z, w (the physical argument is the ratio z/w), plus exact
// verification of its structural properties.

#include "qsa/graded.hpp"
#include "qsa/report.hpp"

namespace qsa {

// R with the extra (-1)^{[a][b]} signs stripped (the "tilde" convention):
// the five-term sum of matrix units with rational coefficients in z, w.
GradedMatrix build_rtilde(const ParityStructure &ps);

// The graded R: row (a,b) of rtilde scaled by (-1)^{[a][b]}.
GradedMatrix build_r(const ParityStructure &ps);

// Independent structural "R21": same five-term sum with the two tensor
// factors of every term exchanged. Used as the oracle for PT symmetry.
GradedMatrix build_r_swapped(const ParityStructure &ps);

// P12 R12 P12 = R21 (graded P conjugation vs the structural swap).
CheckResult check_pt_symmetry(const GradedMatrix &R, const ParityStructure &ps);

// R12(z/w) R21(w/z) = 1.
CheckResult check_unitarity(const GradedMatrix &R, const ParityStructure &ps);

// Every nonzero entry has even total parity [a']+[b']+[a]+[b].
CheckResult check_weight_conservation(const GradedMatrix &R, const ParityStructure &ps);

enum class YbeForm { ThetaOperator, ComponentSigns, TildePlain };

// Yang-Baxter equation R12(z/w) R13(z) R23(w) = R23(w) R13(z) R12(z/w),
// verified in three independently implemented sign conventions.
CheckResult check_ybe(const ParityStructure &ps, YbeForm form);
// Same forms but on explicitly supplied matrices (argument order:
// ratio z/w, z, w in the tilde or graded convention as the form expects).
CheckResult check_ybe_on(const GradedMatrix &Rzw, const GradedMatrix &Rz,
                         const GradedMatrix &Rw, const ParityStructure &ps,
                         YbeForm form);

// Ordinary (sign-free) slot swap on V (x) V, as a matrix on the graded space.
GradedMatrix plain_swap(const ParityStructure &ps);

// Substitute both spectral variables: z -> f(z), w -> g(w) style helpers.
GradedMatrix subst_ratio_args(const GradedMatrix &R, const LaurentPoly &z_to,
                              const LaurentPoly &w_to);

} // namespace qsa
