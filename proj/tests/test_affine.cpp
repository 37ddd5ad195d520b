#include "doctest.h"
#include "tca/affine_demazure.hpp"

using namespace tca;

namespace {

AffineRootData data(const char* t, const char* a) {
    return build_affine_data(std::make_shared<const FoldedAlgebra>(fold(t, a)));
}

IVec weyl_reflect(const AffineRootData& D, const IVec& nu, int i) {
    IVec r = nu;
    for (int j = 0; j < D.n0; ++j) r[j] -= nu[i] * D.A0[j][i];
    return r;
}

IVec unit(int n, int i) {
    IVec v(n, 0);
    v[i] = 1;
    return v;
}

}  // namespace

TEST_CASE("affine Cartan matrices") {
    auto A1 = data("A1", "id");
    CHECK(A1.Ahat == IMat{{2, -2}, {-2, 2}});
    CHECK(A1.pair(A1.simple_root(0), 1) == -2);
    auto A3 = data("A3", "order2");
    CHECK(A3.F->a0 == 1);
    CHECK(A3.Ahat == IMat{{2, 0, -2}, {0, 2, -2}, {-1, -1, 2}});
    auto G = data("D4", "order3");
    CHECK(G.Ahat == IMat{{2, -1, 0}, {-1, 2, -3}, {0, -1, 2}});
    auto A2 = data("A2", "order2");
    CHECK(A2.F->a0 == 2);
    CHECK(A2.Ahat == IMat{{2, -1}, {-4, 2}});
    for (auto* D : {&A1, &A3, &G, &A2})
        for (int i = 0; i <= D->n0; ++i)
            for (int j = 0; j <= D->n0; ++j) CHECK(D->pair(D->simple_root(j), i) == D->Ahat[i][j]);
}

TEST_CASE("pairing table, marks and comarks") {
    for (auto [t, a] : std::vector<std::pair<const char*, const char*>>{
             {"A1", "id"}, {"A3", "order2"}, {"D4", "order3"}, {"D4", "order2"}, {"A2", "order2"}, {"A4", "order2"}}) {
        auto D = data(t, a);
        CAPTURE(t);
        AffineWeight delta{0, IVec(D.n0, 0), 0};
        for (int i = 0; i <= D.n0; ++i) {
            delta = D.shift(delta, D.simple_root(i), D.marks[i]);
            CHECK(D.eval_c(D.simple_root(i)) == 0);
        }
        CHECK(delta == AffineWeight{0, IVec(D.n0, 0), 1});
        for (int i = 0; i <= D.n0; ++i) CHECK(D.pair(delta, i) == 0);
        AffineWeight L0{1, IVec(D.n0, 0), 0};
        CHECK(D.pair(L0, 0) == 1);
        CHECK(D.eval_c(L0) == D.c_level);
        CHECK(D.kappa_theta == Q(D.F->m) / Q(D.F->a0));
        // Lambda_i = hth_i Lambda_0 + omega_i when that is integral
        for (int i = 0; i < D.n0; ++i) {
            if (!is_integer(D.hth[i])) continue;
            AffineWeight Li{(int)D.hth[i].get_num().get_si(), unit(D.n0, i), 0};
            for (int j = 0; j <= D.n0; ++j) CHECK(D.pair(Li, j) == (j == i + 1));
        }
    }
}

TEST_CASE("alcove walk") {
    auto A1 = data("A1", "id");
    auto w = to_dominant_with_word(A1, 3, {0});
    CHECK(w.word.empty());
    CHECK(w.n == 0);
    CHECK(w.dominant == AffineWeight{3, {0}, 0});
    w = to_dominant_with_word(A1, 1, {1});
    CHECK(w.word.size() == 1);
    CHECK_THROWS_AS(to_dominant_with_word(A1, 0, {1}), std::invalid_argument);
    CHECK_THROWS_AS(to_dominant_with_word(data("A2", "order2"), 1, {1}), std::logic_error);

    for (auto [t, a] : std::vector<std::pair<const char*, const char*>>{{"A3", "order2"}, {"D4", "order3"}}) {
        auto D = data(t, a);
        for (auto lam : std::vector<IVec>{{1, 0}, {0, 1}, {1, 1}, {2, 1}})
            for (int l : {1, 2}) {
                auto W = to_dominant_with_word(D, l, lam);
                CHECK(D.dominant(W.dominant));
                AffineWeight x = W.dominant;
                for (auto it = W.word.rbegin(); it != W.word.rend(); ++it) x = D.reflect(x, *it);
                IVec ml = lam;
                for (auto& c : ml) c = -c;
                CHECK(x == AffineWeight{l, ml, W.n});
                // reduced: each step of the walk crossed a wall
                AffineWeight y{l, ml, 0};
                for (int i : W.word) {
                    CHECK(D.pair(y, i) < 0);
                    y = D.reflect(y, i);
                }
            }
    }
}

TEST_CASE("Demazure operators") {
    auto D = data("A3", "order2");
    AffineWeight L{1, {0, 0}, 0};
    CHECK(demazure_character(D, L, {}) == AffineCharacter{{L, 1}});
    AffineWeight M{6, {0, 3}, 0};
    REQUIRE(D.dominant(M));
    auto ch = demazure_character(D, M, {2});
    CHECK(ch.size() == 4);
    for (int j = 0; j <= 3; ++j) CHECK(ch[D.shift(M, D.simple_root(2), -j)] == 1);
    CHECK_THROWS_AS(demazure_character(D, AffineWeight{1, {-1, 0}, 0}, {0}), std::invalid_argument);

    std::mt19937 rng(5);
    for (int t = 0; t < 20; ++t) {
        auto c = random_character(D, rng, 1 + t % 3);
        for (int i = 0; i <= D.n0; ++i) {
            auto once = demazure_op(D, i, c);
            CHECK(demazure_op(D, i, once) == once);
        }
    }

    for (auto [t, a] : std::vector<std::pair<const char*, const char*>>{{"A3", "order2"}, {"D4", "order3"}, {"A1", "id"}}) {
        auto E = data(t, a);
        auto pairs = braid_pairs(E);
        if (std::string(t) != "A1") CHECK(pairs.size() >= 3);
        AffineWeight Lam{2, IVec(E.n0, 1), 0};
        if (!E.dominant(Lam)) Lam.level = 10;
        REQUIRE(E.dominant(Lam));
        for (auto& [u, v] : pairs) CHECK(demazure_character(E, Lam, u) == demazure_character(E, Lam, v));
    }
}

TEST_CASE("graded specialization") {
    auto A1 = data("A1", "id");
    auto g = demazure_oracle(A1, 1, {2});
    GradedCharacter want{{{{2}, 0}, 1}, {{{0}, 0}, 1}, {{{-2}, 0}, 1}, {{{0}, 1}, 1}};
    CHECK(g == want);
    CHECK(demazure_oracle(A1, 1, {0}) == GradedCharacter{{{{0}, 0}, 1}});
    for (int m = 1; m <= 4; ++m) CHECK(char_dim(demazure_oracle(A1, 1, {m})) == (1L << m));

    auto A3 = data("A3", "order2");
    CHECK(char_dim(demazure_oracle(A3, 1, {1, 0})) == 4);
    CHECK(char_dim(demazure_oracle(A3, 1, {0, 1})) == 6);
    CHECK(char_dim(demazure_oracle(A3, 1, {1, 1})) == 24);
    auto G = data("D4", "order3");
    CHECK(G.F->is_short({1, 0}));
    CHECK(char_dim(demazure_oracle(G, 1, {1, 0})) == 8);

    for (auto* D : {&A1, &A3, &G})
        for (int l : {1, 2})
            for (int a = 0; a <= 2; ++a)
                for (int b = 0; b <= (D->n0 > 1 ? 1 : 0); ++b) {
                    IVec lam = D->n0 > 1 ? IVec{a, b} : IVec{a};
                    auto ch = demazure_oracle(*D, l, lam);
                    CHECK(ch[{lam, 0}] == 1);
                    for (auto& [k, c] : ch) {
                        CHECK(k.second >= 0);
                        for (int i = 0; i < D->n0; ++i) {
                            auto it = ch.find({weyl_reflect(*D, k.first, i), k.second});
                            CHECK((it != ch.end() && it->second == c));
                        }
                    }
                }
}

TEST_CASE("coroot display") {
    for (auto& e : verify_coroot_display(data("A1", "id"), 3)) CHECK_MESSAGE(e.pass, e.detail);
    // computed level coefficient kappa(alpha) a0/m against the printed m r^vee / a0
    auto A3 = data("A3", "order2");
    CHECK(rhat_effective(*A3.F, {1, 0}) == 1);
    CHECK(rhat_effective(*A3.F, {0, 1}) == Q(1) / Q(2));
    CHECK(rhat_printed(*A3.F, {1, 0}) == 4);
    CHECK(rhat_printed(*A3.F, {0, 1}) == 2);
    auto A2 = data("A2", "order2");
    CHECK(rhat_effective(*A2.F, {1}) == 4);
    CHECK(rhat_effective(*A2.F, {2}) == 1);
    CHECK(rhat_printed(*A2.F, {1}) == 4);
    CHECK(rhat_printed(*A2.F, {2}) == 1);
    auto count = [](const AffineRootData& D) {
        int bad = 0;
        for (auto& e : verify_coroot_display(D, 3)) bad += !e.pass;
        return bad;
    };
    CHECK(count(A3) == 16);
    CHECK(count(data("D4", "order3")) == 24);
    CHECK(count(A2) == 4);
}
