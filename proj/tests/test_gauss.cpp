#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qsa/currents.hpp"

using namespace qsa;

namespace {

LaurentPoly V(Var v, int p = 1) { return LaurentPoly::variable(v, p); }

// commutative test input: blocks are scalar multiples of the identity on W,
// so the factorization can be checked against scalar Gaussian elimination
GradedMatrix scalar_blocks(const Space &aux, const Space &W,
                           const std::vector<std::vector<long>> &vals) {
    int dA = aux.dim();
    std::vector<std::vector<GradedMatrix>> blk(
        static_cast<size_t>(dA), std::vector<GradedMatrix>(static_cast<size_t>(dA)));
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j)
            blk[static_cast<size_t>(i)][static_cast<size_t>(j)] = GradedMatrix::scalar(
                W, RationalFunction(Rat(vals[static_cast<size_t>(i)][static_cast<size_t>(j)])));
    return from_blocks(blk, aux, W);
}

} // namespace

TEST_CASE("identity factors trivially") {
    ParityStructure ps{1, 1};
    Space v = Space::fundamental(ps);
    GradedMatrix I = GradedMatrix::identity(Space::tensor(v, v));
    GaussData g = gauss_decompose(I, v, v);
    for (int p = 0; p < 2; ++p) CHECK(g.K[static_cast<size_t>(p)] == GradedMatrix::identity(v));
    CHECK(g.E[1][0].is_zero());
    CHECK(g.F[0][1].is_zero());
    CHECK(gauss_reconstruct(g) == I);
}

TEST_CASE("commutative 2x2 matches scalar elimination") {
    ParityStructure ps{2, 0};
    Space aux = Space::fundamental(ps), W = aux;
    // [[2, 3], [5, 7]]: k1 = 2, e = 5/2, f = 3/2, k2 = 7 - 5*3/2 = -1/2
    GradedMatrix M = scalar_blocks(aux, W, {{2, 3}, {5, 7}});
    GaussData g = gauss_decompose(M, aux, W);
    CHECK(g.K[0] == GradedMatrix::scalar(W, RationalFunction(Rat(2))));
    CHECK(g.K[1] == GradedMatrix::scalar(W, RationalFunction(Rat(-1, 2))));
    CHECK(g.E[1][0] == GradedMatrix::scalar(W, RationalFunction(Rat(5, 2))));
    CHECK(g.F[0][1] == GradedMatrix::scalar(W, RationalFunction(Rat(3, 2))));
    CHECK(gauss_reconstruct(g) == M);
}

TEST_CASE("singular pivot is reported") {
    ParityStructure ps{2, 0};
    Space aux = Space::fundamental(ps), W = aux;
    GradedMatrix M = scalar_blocks(aux, W, {{0, 1}, {1, 0}});
    CHECK_THROWS_AS(gauss_decompose(M, aux, W), SingularPivot);
    GradedMatrix M2 = scalar_blocks(aux, W, {{1, 2}, {2, 4}});
    CHECK_THROWS_AS(gauss_decompose(M2, aux, W), SingularPivot);
}

TEST_CASE("factorization of the m = n = 1 generating matrix") {
    ParityStructure ps{1, 1};
    Space v = Space::fundamental(ps);
    GradedMatrix L = eval_L(ps);
    GaussData g = gauss_decompose(L, v, v);

    GradedMatrix k1 = g.K[0], k2 = g.K[1], e = g.E[1][0], f = g.F[0][1];
    // the four blocks recombine as [[k1, k1 f], [e k1, k2 + e k1 f]]
    CHECK(L_block(L, v, 1, 1) == k1);
    CHECK(L_block(L, v, 1, 2) == k1 * f);
    CHECK(L_block(L, v, 2, 1) == e * k1);
    CHECK(L_block(L, v, 2, 2) == k2 + e * k1 * f);

    // pinned kernels: k1 = diag(1, (z - a)/(z q - a q^{-1}))
    LaurentPoly z = V(VZ), a = V(VA), q = V(VQ), qi = V(VQ, -1);
    CHECK(k1.at(0, 0) == RationalFunction(1));
    CHECK(k1.at(1, 1) == RationalFunction(z - a, z * q - a * qi));
    // the raising kernel has the single entry a(q - q^{-1})/(z - a)
    CHECK(e.at(0, 1) == RationalFunction(a * (q - qi), z - a));
    CHECK(e.at(0, 0).is_zero());
    CHECK(e.at(1, 0).is_zero());
    CHECK(e.at(1, 1).is_zero());
    CHECK(f.at(1, 0) == RationalFunction(z * (q - qi), z - a));
}

TEST_CASE("reconstruction and quasi-minor uniqueness") {
    for (auto [m, n] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
        ParityStructure ps{m, n};
        Space v = Space::fundamental(ps);
        GradedMatrix L = eval_L(ps);
        GaussData g = gauss_decompose(L, v, v);
        CHECK(gauss_reconstruct(g) == L);
        CHECK(gauss_equal(g, gauss_decompose_minors(L, v, v)));
    }
}

TEST_CASE("diagonal factor entries are diagonal matrices") {
    ParityStructure ps{2, 1};
    Space v = Space::fundamental(ps);
    GaussData g = gauss_decompose(eval_L(ps), v, v);
    for (const auto &k : g.K)
        for (int r = 0; r < v.dim(); ++r)
            for (int c = 0; c < v.dim(); ++c)
                if (r != c) CHECK(k.at(r, c).is_zero());
}
