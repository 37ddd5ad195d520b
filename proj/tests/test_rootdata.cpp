#include "doctest.h"
#include "tca/rootdata.hpp"

using namespace tca;

namespace {

// roots as the Weyl-orbit of the simple roots, acting on root coordinates
std::set<IVec> roots_by_reflection(const RootSystem& R) {
    std::set<IVec> seen;
    std::vector<IVec> st;
    for (int i = 0; i < R.n; ++i) {
        seen.insert(R.simple(i));
        st.push_back(R.simple(i));
    }
    while (!st.empty()) {
        IVec r = st.back();
        st.pop_back();
        IVec w = R.root_to_weight(r);
        for (int i = 0; i < R.n; ++i) {
            IVec u(r);
            u[i] -= w[i];
            if (seen.insert(u).second) st.push_back(u);
        }
    }
    return seen;
}

const char* all_types[] = {"A1", "A2", "A3", "A4", "A5", "B2", "B3", "C2", "C3", "D4", "D5", "G2", "F4", "E6"};

}  // namespace

TEST_CASE("rank one") {
    auto R = build_root_system(CartanLabel::parse("A1"));
    CHECK(R.pos.size() == 1);
    CHECK(R.pos[R.theta] == IVec{1});
    CHECK(R.lacing == 1);
}

TEST_CASE("root counts agree with reflection closure") {
    for (auto t : all_types) {
        auto R = build_root_system(CartanLabel::parse(t));
        auto all = roots_by_reflection(R);
        size_t npos = 0;
        for (auto& r : all) {
            if (std::all_of(r.begin(), r.end(), [](int x) { return x >= 0; })) {
                ++npos;
                CHECK(R.index.count(r));
            }
        }
        CHECK_MESSAGE(npos == R.pos.size(), t);
        CHECK(all.size() == 2 * R.pos.size());
        for (auto& r : R.pos) {
            IVec m(r);
            for (auto& x : m) x = -x;
            CHECK(!R.index.count(m));
        }
        // a_ij table reproduced by alpha_j(h_i)
        for (int i = 0; i < R.n; ++i)
            for (int j = 0; j < R.n; ++j) CHECK(R.root_to_weight(R.simple(j))[i] == R.A[i][j]);
        // theta dominates every positive root
        for (auto& r : R.pos)
            for (int i = 0; i < R.n; ++i) CHECK(r[i] <= R.pos[R.theta][i]);
        CHECK(R.norm2(R.pos[R.theta]) == 2);
    }
}

TEST_CASE("small counts") {
    CHECK(build_root_system(CartanLabel::parse("A2")).pos.size() == 3);
    auto G = build_root_system(CartanLabel::parse("G2"));
    CHECK(G.pos.size() == 6);
    CHECK(G.lacing == 3);
    CHECK(build_root_system(CartanLabel::parse("B3")).lacing == 2);
}

TEST_CASE("per-root lacing") {
    auto R = build_root_system(CartanLabel::parse("C3"));
    for (auto& r : R.pos) CHECK(R.rvee(r) == (R.is_long(r) ? 1 : 2));
}

TEST_CASE("invalid labels rejected") {
    CHECK_THROWS(CartanLabel::parse("E5"));
    CHECK_THROWS(CartanLabel::parse("D3"));
    CHECK_THROWS(CartanLabel::parse("G3"));
    CHECK_THROWS(CartanLabel::parse("X2"));
    CHECK_THROWS(CartanLabel::parse("F"));
}

TEST_CASE("weyl orbits") {
    auto A1 = build_root_system(CartanLabel::parse("A1"));
    CHECK(weyl_orbit(A1, {2}) == std::set<IVec>{{2}, {-2}});
    auto A2 = build_root_system(CartanLabel::parse("A2"));
    CHECK(weyl_orbit(A2, {1, 0}).size() == 3);
    for (auto t : all_types) {
        auto R = build_root_system(CartanLabel::parse(t));
        CHECK(weyl_orbit(R, IVec(R.n, 0)).size() == 1);
        IVec mu(R.n, 0);
        mu[0] = 1;
        int ndom = 0;
        for (auto& w : weyl_orbit(R, mu)) ndom += dominant(w);
        CHECK(ndom == 1);
    }
}

TEST_CASE("weyl character") {
    auto A1 = build_root_system(CartanLabel::parse("A1"));
    auto ch = weyl_character(A1, {2});
    CHECK(ch == FiniteCharacter{{{2}, 1}, {{0}, 1}, {{-2}, 1}});
    auto C2 = build_root_system(CartanLabel::parse("C2"));
    long tot = 0;
    for (auto& [w, m] : weyl_character(C2, {1, 0})) tot += m;
    CHECK(tot == 4);
    CHECK_THROWS(weyl_character(C2, {-1, 0}));
    for (auto t : all_types) {
        auto R = build_root_system(CartanLabel::parse(t));
        auto c0 = weyl_character(R, IVec(R.n, 0));
        CHECK(c0 == FiniteCharacter{{IVec(R.n, 0), 1}});
    }
}

TEST_CASE("Freudenthal matches the dimension formula") {
    std::vector<std::string> types = {"A1", "A2", "A3", "B2", "C2", "G2", "B3", "C3"};
    for (auto& t : types) {
        auto R = build_root_system(CartanLabel::parse(t));
        int cap = R.n <= 2 ? 3 : 1;
        IVec lam(R.n, 0);
        std::function<void(int)> rec = [&](int i) {
            if (i == R.n) {
                auto ch = weyl_character(R, lam);
                long tot = 0;
                for (auto& [w, m] : ch) {
                    tot += m;
                    for (int j = 0; j < R.n; ++j) {
                        auto it = ch.find(R.reflect(w, j));
                        REQUIRE(it != ch.end());
                        CHECK(it->second == m);
                    }
                }
                CHECK(Z(tot) == weyl_dimension(R, lam));
                return;
            }
            for (int v = 0; v <= cap; ++v) {
                lam[i] = v;
                rec(i + 1);
            }
        };
        rec(0);
    }
    auto F4 = build_root_system(CartanLabel::parse("F4"));
    CHECK(weyl_dimension(F4, {0, 0, 0, 1}) == 26);
    long tot = 0;
    for (auto& [w, m] : weyl_character(F4, {0, 0, 0, 1})) tot += m;
    CHECK(tot == 26);
}
