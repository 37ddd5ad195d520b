#include "doctest.h"
#include "tca/identities.hpp"

using namespace tca;

namespace {

std::shared_ptr<const FoldedAlgebra> shared_fold(const char* t, const char* a) {
    return std::make_shared<const FoldedAlgebra>(fold(t, a));
}

UElem cartan_part(const TruncatedCurrentAlgebra& C, const UElem& u) {
    UElem r;
    for (auto& [m, c] : u)
        if (std::all_of(m.begin(), m.end(), [&](auto& f) { return C.el[f.first].kind == Kind::h; })) uadd(r, m, c);
    return r;
}

long failures(const std::vector<CheckEntry>& v) {
    long n = 0;
    for (auto& e : v) n += !e.pass;
    return n;
}

}  // namespace

TEST_CASE("sl2 straightening and divided powers") {
    auto C = build_truncated(fold("A1", "id"), 3);
    Envelope U(C);
    int xp = C.x(Kind::xp, {1}, 0), xm = C.x(Kind::xm, {1}, 0), h = C.h(0, 0);
    UElem want = U.mul(U.gen(xm), U.gen(xp));
    uaxpy(want, Q(1), U.gen(h));
    CHECK(U.mul(U.gen(xp), U.gen(xm)) == want);
    CHECK(U.mul(U.divpow(xm, 2), U.divpow(xm, 3)) == UElem{{Mono{{xm, 5}}, Q(10) / factorial(5)}});

    int xp1 = C.x(Kind::xp, {1}, 1), xm1 = C.x(Kind::xm, {1}, 1), h2 = C.h(0, 2);
    want = U.mul(U.gen(xm1), U.gen(xp1));
    uaxpy(want, Q(1), U.gen(h2));
    CHECK(U.mul(U.gen(xp1), U.gen(xm1)) == want);

    // n^- of sl2 is abelian
    CHECK(U.mul(U.divpow(xm1, 2), U.divpow(xm, 2)) == U.mul(U.divpow(xm, 2), U.divpow(xm1, 2)));
}

TEST_CASE("product is associative and respects the bigrading") {
    for (auto [t, a] : std::vector<std::pair<const char*, const char*>>{{"A3", "order2"}, {"A2", "order2"}}) {
        auto F = shared_fold(t, a);
        auto C = build_truncated(F, 4);
        Envelope U(C);
        std::mt19937 rng(3);
        for (int s = 0; s < 15; ++s) {
            auto x = random_uelem(rng, C, U), y = random_uelem(rng, C, U), z = random_uelem(rng, C, U);
            CHECK(U.mul(U.mul(x, y), z) == U.mul(x, U.mul(y, z)));
            UElem xy = x;
            uaxpy(xy, Q(3), y);
            UElem lhs = U.mul(xy, z), rhs = U.mul(x, z);
            uaxpy(rhs, Q(3), U.mul(y, z));
            CHECK(lhs == rhs);
            CHECK(U.mul(U.one(), x) == x);
        }
        // single generators: every term of a product carries the total degree and weight
        for (int i = 0; i < 40; ++i) {
            int p = rng() % C.dim, q = rng() % C.dim;
            int r = C.el[p].r + C.el[q].r;
            if (r >= C.D) continue;
            IVec w = C.el[p].wt;
            for (size_t k = 0; k < w.size(); ++k) w[k] += C.el[q].wt[k];
            for (auto& [m, c] : U.mul(U.gen(p), U.gen(q))) {
                int rr = 0;
                IVec ww(w.size(), 0);
                for (auto& [g, e] : m) {
                    rr += e * C.el[g].r;
                    for (size_t k = 0; k < w.size(); ++k) ww[k] += e * C.el[g].wt[k];
                }
                CHECK(rr == r);
                CHECK(ww == w);
            }
        }
    }
}

TEST_CASE("Lambda series") {
    auto A1 = build_truncated(fold("A1", "id"), 4);
    Envelope U(A1);
    auto L = lambda_series_untwisted(U, {1}, 1, 2);
    CHECK(L[0] == U.one());
    int h1 = A1.h(0, 1), h2 = A1.h(0, 2);
    UElem want{{Mono{{h1, 2}}, Q(1) / Q(2)}, {Mono{{h2, 1}}, Q(-1) / Q(2)}};
    CHECK(L[2] == want);
    CHECK_THROWS_AS(lambda_series_untwisted(U, {1}, 1, 4), std::invalid_argument);

    auto A3 = build_truncated(fold("A3", "order2"), 7);
    Envelope V(A3);
    auto Ll = lambda_series(V, {0, 1}, 3);
    CHECK(Ll[1] == UElem{{Mono{{A3.h(1, 2), 1}}, Q(-1)}});

    // Lambda_r is the Cartan part of (x^+ t^d)^{(r)} (x^-)^{(r)} up to (-1)^r, so it lies in the integral form
    for (auto [t, a] : std::vector<std::pair<const char*, const char*>>{
             {"A1", "id"}, {"A3", "order2"}, {"D4", "order3"}}) {
        auto F = std::make_shared<const FoldedAlgebra>(fold(t, a));
        auto C = build_truncated(F, 3 * F->m + 1);
        Envelope E(C);
        for (auto& mu : F->R0.pos) {
            int d = F->is_long(mu) ? F->m : 1;
            auto L = lambda_series(E, mu, 3);
            int xp = C.x(Kind::xp, mu, d), xm = C.x(Kind::xm, mu, 0);
            REQUIRE(xp >= 0);
            for (int r = 1; r <= 3; ++r) {
                UElem want;
                uaxpy(want, Q(r % 2 ? -1 : 1), L[r]);
                CHECK_MESSAGE(cartan_part(C, E.mul(E.divpow(xp, r), E.divpow(xm, r))) == want, t, vstr(mu), r);
                for (auto& [m, c] : L[r]) {
                    int deg = 0;
                    for (auto& [g, e] : m) deg += e * C.el[g].r;
                    CHECK(deg == d * r);
                }
            }
        }
    }
}

TEST_CASE("lambda_project") {
    auto C = build_truncated(fold("A1", "id"), 2);
    Envelope U(C);
    int xp = C.x(Kind::xp, {1}, 0), xm = C.x(Kind::xm, {1}, 0), h = C.h(0, 0);
    CHECK(lambda_project(C, U.gen(xp), {3}).empty());
    // binom(h, 2) = h(h-1)/2
    UElem b;
    uaxpy(b, Q(1) / Q(2), U.mul(U.gen(h), U.gen(h)));
    uaxpy(b, Q(-1) / Q(2), U.gen(h));
    CHECK(lambda_project(C, b, {2}) == U.one());
    for (int m = 1; m <= 4; ++m) {
        auto r = lambda_project(C, U.mul(U.gen(xp), U.divpow(xm, 2)), {m});
        UElem want;
        uadd(want, Mono{{xm, 1}}, Q(m - 1));
        CHECK(r == want);
    }
}

TEST_CASE("psi") {
    auto C = build_truncated(fold("A3", "order2"), 3);
    Envelope U(C);
    auto psi = psi_current(C);
    for (int i = 0; i < 2; ++i) {
        IVec ai(2, 0);
        ai[i] = 1;
        int xp = C.x(Kind::xp, ai, 0), xm = C.x(Kind::xm, ai, 0);
        for (int k = 1; k <= 3; ++k) CHECK(psi_apply(U, psi, U.divpow(xp, k)) == U.divpow(xm, k));
        UElem mh = U.gen(C.h(i, 0));
        for (auto& [m, c] : mh) c = -c;
        CHECK(psi_apply(U, psi, U.gen(C.h(i, 0))) == mh);
    }
    for (auto [t, a] : std::vector<std::pair<const char*, const char*>>{{"A3", "order2"}, {"A2", "order2"}}) {
        auto r = verify_psi(shared_fold(t, a), 40);
        CHECK(failures(r) == 0);
    }
    // psi(Lambda(u)) = Lambda(u)^{-1}; the sign statement only holds for r = 1
    auto r = verify_psi_lambda(shared_fold("A3", "order2"), 3);
    long printed = 0, inverse = 0;
    for (auto& e : r) {
        if (e.check.find("^-1") != std::string::npos)
            inverse += !e.pass;
        else
            printed += !e.pass;
    }
    CHECK(inverse == 0);
    CHECK(printed > 0);
}

TEST_CASE("Garland identities") {
    auto A3 = shared_fold("A3", "order2");
    auto A2 = shared_fold("A2", "order2");
    CHECK(failures(garland_battery(A3, GarlandCase::a)) == 0);
    CHECK(failures(garland_battery(A3, GarlandCase::b)) == 0);
    CHECK(failures(garland_battery(A2, GarlandCase::c2)) == 0);
    auto c1 = garland_battery(A2, GarlandCase::c1);
    CHECK(c1.size() == 18);
    CHECK(failures(c1) == 12);
    CHECK(failures(garland_battery(A2, GarlandCase::c1, Variant::corrected)) == 0);
    auto c3 = garland_battery(A2, GarlandCase::c3);
    CHECK(c3.size() == 9);
    CHECK(failures(c3) == 2);
    CHECK(failures(garland_battery(A2, GarlandCase::c3, Variant::corrected)) == 0);

    auto A1 = shared_fold("A1", "id");
    auto un = garland_battery(A1, GarlandCase::untwisted);
    // the missing sign only shows when l is odd and the right side is nonzero (l < k)
    auto grid = garland_grid(GarlandCase::untwisted);
    for (size_t i = 0; i < grid.size(); ++i) CHECK(un[i].pass == !(grid[i].l % 2 == 1 && grid[i].l < grid[i].k));
    CHECK(failures(un) == 16);
    CHECK(failures(garland_battery(A1, GarlandCase::untwisted, Variant::corrected)) == 0);

    // l = 0: nothing to commute
    auto C = build_truncated(A3, garland_cutoff(*A3, GarlandCase::a));
    Envelope U(C);
    CHECK(verify_garland(U, GarlandCase::a, {1, 0}, {0, 2, 0, 1}).pass);
    CHECK_THROWS_AS(verify_garland(U, GarlandCase::c1, {1, 0}, {1, 1, 0, 1}), std::invalid_argument);
}

TEST_CASE("hyperdegree drop, Lambda relation, rank-one subalgebras") {
    for (auto [t, a] : std::vector<std::pair<const char*, const char*>>{{"A2", "order2"}, {"A3", "order2"}}) {
        auto r = verify_hyperdegree(shared_fold(t, a), 30);
        CHECK(r.size() >= 30);
        CHECK(failures(r) == 0);
    }
    for (auto [t, a] : std::vector<std::pair<const char*, const char*>>{{"A3", "order2"}, {"D4", "order3"}}) {
        auto F = shared_fold(t, a);
        for (auto& mu : F->R0.pos) CHECK(failures(verify_lambda_relation(*F, mu, 4)) == 0);
    }
    for (auto [t, a] : std::vector<std::pair<const char*, const char*>>{
             {"A1", "id"}, {"A3", "order2"}, {"D4", "order3"}, {"A2", "order2"}}) {
        auto F = shared_fold(t, a);
        for (auto& mu : F->R0.pos) CHECK_MESSAGE(sl2_embedding_check(F, mu).pass, t, " ", vstr(mu));
    }
}
