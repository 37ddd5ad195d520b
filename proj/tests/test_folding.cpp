#include "doctest.h"
#include "tca/current.hpp"

using namespace tca;

namespace {

// dimension of the zeta^k eigenspace of sigma from traces of its powers
long eigen_dim(const FoldedAlgebra& F, int k) {
    int n = F.g.dim;
    QuadExt s(0);
    for (int j = 0; j < F.m; ++j) {
        long tr = 0;
        for (int a = 0; a < n; ++a) {
            int b = a, sg = 1;
            for (int t = 0; t < j; ++t) {
                sg *= F.sgn[b];
                b = F.img[b];
            }
            if (b == a) tr += sg;
        }
        s += qpow(F.zeta, ((F.m - j * k) % F.m + F.m) % F.m) * QuadExt(tr);
    }
    s = s / QuadExt(long(F.m));
    REQUIRE(s.rational());
    REQUIRE(is_integer(s.a));
    return s.a.get_num().get_si();
}

}  // namespace

TEST_CASE("folded types and graded dimensions") {
    struct Row {
        const char *type, *aut, *g0;
        std::vector<int> dims;
    };
    std::vector<Row> rows = {{"A1", "id", "A1", {3}},          {"A3", "order2", "C2", {10, 5}},
                             {"A5", "order2", "C3", {21, 14}},  {"D4", "order2", "B3", {21, 7}},
                             {"D4", "order3", "G2", {14, 7, 7}}, {"A2", "order2", "A1", {3, 5}},
                             {"A4", "order2", "B2", {10, 14}},  {"D5", "order2", "B4", {36, 9}}};
    for (auto& r : rows) {
        auto F = fold(r.type, r.aut);
        CAPTURE(r.type);
        CHECK(F.g0_label.str() == r.g0);
        for (int e = 0; e < F.m; ++e) {
            CHECK(eps_dim(F, e) == r.dims[e]);
            // label eps lives in the zeta^{-eps} eigenspace
            CHECK(eps_dim(F, e) == eigen_dim(F, (F.m - e) % F.m));
        }
    }
}

TEST_CASE("sigma is an automorphism of the stated order") {
    for (auto [t, a] : std::vector<std::pair<const char*, const char*>>{
             {"A3", "order2"}, {"D4", "order3"}, {"A4", "order2"}, {"E6", "order2"}}) {
        auto F = fold(t, a);
        auto& g = F.g;
        for (int x = 0; x < g.dim; ++x) {
            int b = x, sg = 1;
            for (int j = 0; j < F.m; ++j) {
                sg *= F.sgn[b];
                b = F.img[b];
            }
            CHECK(b == x);
            CHECK(sg == 1);
        }
        for (int x = 0; x < g.dim; ++x)
            for (int y = 0; y < g.dim; ++y) {
                SVec<QuadExt> ex{{x, QuadExt(1)}}, ey{{y, QuadExt(1)}};
                auto lhs = sigma_apply(F, g.bracket(ex, ey));
                auto rhs = g.bracket(sigma_apply(F, ex), sigma_apply(F, ey));
                CHECK(vec_equal(lhs, rhs));
            }
    }
}

TEST_CASE("folded vectors are sigma eigenvectors with matching weights") {
    for (auto [t, a] : std::vector<std::pair<const char*, const char*>>{
             {"A3", "order2"}, {"D4", "order3"}, {"A2", "order2"}, {"A4", "order2"}}) {
        auto F = fold(t, a);
        for (auto& e : F.el) {
            auto sv = sigma_apply(F, e.vec);
            CHECK(vec_equal(sv, scaled(e.vec, qpow(F.zeta, (F.m - e.eps) % F.m))));
            for (auto& [b, c] : e.vec) {
                IVec w = F.restrict_root(F.g.weight(b));
                CHECK(w == e.mu);
            }
        }
    }
}

TEST_CASE("eps = 0 part carries the Chevalley relations of g0") {
    for (auto [t, a] : std::vector<std::pair<const char*, const char*>>{
             {"A3", "order2"}, {"D4", "order2"}, {"D4", "order3"}, {"A4", "order2"}}) {
        auto F = fold(t, a);
        int n0 = F.n0();
        for (int i = 0; i < n0; ++i) {
            IVec ai(n0, 0);
            ai[i] = 1;
            int xp = F.x(Kind::xp, ai, 0), xm = F.x(Kind::xm, ai, 0);
            REQUIRE(xp >= 0);
            CHECK(F.bracket_basis(xp, xm) == SVec<Q>{{F.h(i, 0), Q(1)}});
            for (int j = 0; j < n0; ++j) {
                IVec aj(n0, 0);
                aj[j] = 1;
                int yp = F.x(Kind::xp, aj, 0);
                SVec<Q> want;
                add_term(want, yp, Q(F.A0[i][j]));
                CHECK(F.bracket_basis(F.h(i, 0), yp) == want);
            }
        }
        IMat S = cartan_matrix(F.g0_label);
        for (int i = 0; i < n0; ++i)
            for (int j = 0; j < n0; ++j) CHECK(F.A0[i][j] == S[F.g0_nodes[i]][F.g0_nodes[j]]);
    }
}

TEST_CASE("commutator table against the displayed identities") {
    for (auto [t, a] : std::vector<std::pair<const char*, const char*>>{
             {"A3", "order2"}, {"A5", "order2"}, {"D4", "order2"}, {"D4", "order3"}, {"E6", "order2"}}) {
        auto F = fold(t, a);
        CHECK(F.integral());
        for (auto& e : verify_commutator_table(F)) CHECK_MESSAGE(e.pass, t, " ", e.check, " ", e.detail);
    }
    // A2n: the printed constants are off (factor 2 on [h_{nu,1}, x], 1/2 on h_{eta/2,0}); frozen counts
    auto A2 = fold("A2", "order2");
    CHECK(A2.nonintegral.size() == 2);
    long bad = 0;
    for (auto& e : verify_commutator_table(A2)) bad += !e.pass;
    CHECK(bad == 5);
    auto A4 = fold("A4", "order2");
    CHECK(A4.nonintegral.size() == 4);
    bad = 0;
    for (auto& e : verify_commutator_table(A4)) bad += !e.pass;
    CHECK(bad == 10);
}

TEST_CASE("theta1 and short roots") {
    auto A3 = fold("A3", "order2");
    CHECK(A3.theta1 == IVec{1, 1});
    CHECK(A3.d_mu({1, 0}) == 1);
    auto G = fold("D4", "order3");
    CHECK(G.theta1 == IVec{2, 1});
    auto A2 = fold("A2", "order2");
    CHECK(A2.theta1 == IVec{2});
    CHECK(A2.d_mu({1}) == 2);
    CHECK(A2.in_2Rsh({2}));
}

TEST_CASE("truncated current algebra") {
    auto F = std::make_shared<const FoldedAlgebra>(fold("A3", "order2"));
    auto C = build_truncated(F, 4);
    CHECK(C.dim == 10 + 5 + 10 + 5);
    CHECK(current_jacobi_violations(C) == 0);
    for (int a = 1; a < C.dim; ++a) {
        auto &p = C.el[a - 1], &q = C.el[a];
        CHECK(((int)p.kind < (int)q.kind || (p.kind == q.kind && p.r <= q.r)));
    }
    auto G = build_truncated(std::make_shared<const FoldedAlgebra>(fold("D4", "order3")), 4);
    CHECK(G.dim == 14 + 7 + 7 + 14);
    CHECK(current_jacobi_violations(G) == 0);
    auto T = build_truncated(std::make_shared<const FoldedAlgebra>(fold("A2", "order2")), 5);
    CHECK(current_jacobi_violations(T) == 0);
    // bracket raises degree; beyond the cutoff it vanishes
    int a = T.x(Kind::xp, {1}, 3), b = T.x(Kind::xm, {1}, 2);
    REQUIRE(a >= 0);
    REQUIRE(b >= 0);
    CHECK(T.br(a, b).empty());
}
