#include "qsa/currents.hpp"

namespace qsa {

namespace {

Space prefix_space(const Space &aux, int p) {
    return Space{std::vector<int>(aux.parities.begin(), aux.parities.begin() + p)};
}

std::vector<std::vector<GradedMatrix>> blocks_of(const GradedMatrix &Lflat,
                                                 const Space &aux, const Space &W) {
    int dA = aux.dim();
    std::vector<std::vector<GradedMatrix>> B(
        static_cast<size_t>(dA), std::vector<GradedMatrix>(static_cast<size_t>(dA)));
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j)
            B[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                L_block(Lflat, W, i + 1, j + 1);
    return B;
}

GaussData empty_data(const Space &aux, const Space &W) {
    int dA = aux.dim();
    GaussData g{aux, W, {}, {}, {}};
    g.E.assign(static_cast<size_t>(dA),
               std::vector<GradedMatrix>(static_cast<size_t>(dA), GradedMatrix::zero(W)));
    g.F = g.E;
    g.K.assign(static_cast<size_t>(dA), GradedMatrix::zero(W));
    for (int i = 0; i < dA; ++i) {
        g.E[static_cast<size_t>(i)][static_cast<size_t>(i)] = GradedMatrix::identity(W);
        g.F[static_cast<size_t>(i)][static_cast<size_t>(i)] = GradedMatrix::identity(W);
    }
    return g;
}

GradedMatrix pivot_inverse(const GradedMatrix &k, int p) {
    try {
        return k.inverse();
    } catch (const SingularMatrix &) {
        throw SingularPivot("pivot block " + std::to_string(p + 1) +
                            " is not invertible");
    }
}

} // namespace

GaussData gauss_decompose(const GradedMatrix &Lflat, const Space &aux, const Space &W) {
    int dA = aux.dim();
    auto S = blocks_of(Lflat, aux, W);
    GaussData g = empty_data(aux, W);
    for (int p = 0; p < dA; ++p) {
        g.K[static_cast<size_t>(p)] = S[static_cast<size_t>(p)][static_cast<size_t>(p)];
        GradedMatrix kinv = pivot_inverse(g.K[static_cast<size_t>(p)], p);
        for (int i = p + 1; i < dA; ++i)
            g.E[static_cast<size_t>(i)][static_cast<size_t>(p)] =
                S[static_cast<size_t>(i)][static_cast<size_t>(p)] * kinv;
        for (int j = p + 1; j < dA; ++j)
            g.F[static_cast<size_t>(p)][static_cast<size_t>(j)] =
                kinv * S[static_cast<size_t>(p)][static_cast<size_t>(j)];
        for (int i = p + 1; i < dA; ++i)
            for (int j = p + 1; j < dA; ++j)
                S[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    S[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                    g.E[static_cast<size_t>(i)][static_cast<size_t>(p)] *
                        S[static_cast<size_t>(p)][static_cast<size_t>(j)];
    }
    return g;
}

GaussData gauss_decompose_minors(const GradedMatrix &Lflat, const Space &aux,
                                 const Space &W) {
    int dA = aux.dim(), dW = W.dim();
    auto B = blocks_of(Lflat, aux, W);
    GaussData g = empty_data(aux, W);
    for (int p = 0; p < dA; ++p) {
        // Schur complement against the full p x p leading principal block,
        // inverted in one flat Gauss-Jordan pass (independent of the
        // recursive elimination path)
        std::vector<std::vector<GradedMatrix>> Minv;
        if (p > 0) {
            Space pre = prefix_space(aux, p);
            GradedMatrix M(Space::tensor(pre, W));
            for (int r = 0; r < p; ++r)
                for (int s = 0; s < p; ++s)
                    for (int u = 0; u < dW; ++u)
                        for (int v = 0; v < dW; ++v)
                            M.at(r * dW + u, s * dW + v) =
                                B[static_cast<size_t>(r)][static_cast<size_t>(s)].at(u, v);
            GradedMatrix Mi;
            try {
                Mi = M.inverse();
            } catch (const SingularMatrix &) {
                throw SingularPivot("leading principal block of order " +
                                    std::to_string(p) + " is not invertible");
            }
            Minv.assign(static_cast<size_t>(p),
                        std::vector<GradedMatrix>(static_cast<size_t>(p),
                                                  GradedMatrix::zero(W)));
            for (int r = 0; r < p; ++r)
                for (int s = 0; s < p; ++s)
                    for (int u = 0; u < dW; ++u)
                        for (int v = 0; v < dW; ++v)
                            Minv[static_cast<size_t>(r)][static_cast<size_t>(s)].at(u, v) =
                                Mi.at(r * dW + u, s * dW + v);
        }
        auto schur = [&](int i, int j) {
            GradedMatrix s = B[static_cast<size_t>(i)][static_cast<size_t>(j)];
            for (int r = 0; r < p; ++r)
                for (int t = 0; t < p; ++t)
                    s = s - B[static_cast<size_t>(i)][static_cast<size_t>(r)] *
                                Minv[static_cast<size_t>(r)][static_cast<size_t>(t)] *
                                B[static_cast<size_t>(t)][static_cast<size_t>(j)];
            return s;
        };
        g.K[static_cast<size_t>(p)] = schur(p, p);
        GradedMatrix kinv = pivot_inverse(g.K[static_cast<size_t>(p)], p);
        for (int i = p + 1; i < dA; ++i)
            g.E[static_cast<size_t>(i)][static_cast<size_t>(p)] = schur(i, p) * kinv;
        for (int j = p + 1; j < dA; ++j)
            g.F[static_cast<size_t>(p)][static_cast<size_t>(j)] = kinv * schur(p, j);
    }
    return g;
}

GradedMatrix gauss_reconstruct(const GaussData &g) {
    int dA = g.aux.dim();
    std::vector<std::vector<GradedMatrix>> kd(
        static_cast<size_t>(dA),
        std::vector<GradedMatrix>(static_cast<size_t>(dA), GradedMatrix::zero(g.W)));
    for (int i = 0; i < dA; ++i)
        kd[static_cast<size_t>(i)][static_cast<size_t>(i)] = g.K[static_cast<size_t>(i)];
    GradedMatrix Ef = from_blocks(g.E, g.aux, g.W);
    GradedMatrix Kf = from_blocks(kd, g.aux, g.W);
    GradedMatrix Ff = from_blocks(g.F, g.aux, g.W);
    return Ef * Kf * Ff;
}

bool gauss_equal(const GaussData &a, const GaussData &b) {
    if (!(a.aux == b.aux) || !(a.W == b.W)) return false;
    if (a.K != b.K || a.E != b.E || a.F != b.F) return false;
    return true;
}

} // namespace qsa
