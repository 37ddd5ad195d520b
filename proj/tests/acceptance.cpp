// Acceptance run: one PASS/FAIL line per criterion, with the sub-checks underneath.
// Exit status is nonzero when any criterion fails.

#include "tca/tca.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace tca;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
    int id;
    std::string title;
    std::vector<CheckEntry> lines;
    bool pass() const { return certified(lines); }
};

std::shared_ptr<const FoldedAlgebra> shared_fold(const char* t, const char* a) {
    return std::make_shared<const FoldedAlgebra>(fold(t, a));
}

long failures(const std::vector<CheckEntry>& v) {
    long n = 0;
    for (auto& e : v) n += !e.pass;
    return n;
}

CheckEntry summary(const std::string& name, const std::vector<CheckEntry>& v) {
    std::string d = std::to_string(v.size() - failures(v)) + "/" + std::to_string(v.size()) + " pass";
    for (auto& e : v)
        if (!e.pass) {
            d += "; first failure: " + e.check + (e.detail.empty() ? "" : " " + e.detail);
            break;
        }
    return {name, failures(v) == 0 && !v.empty(), d};
}

double seconds(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

CheckEntry timed(const std::string& name, Clock::time_point t0, double limit) {
    double s = seconds(t0);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f s (limit %.0f s)", s, limit);
    return {name, s < limit, buf};
}

Criterion folding() {
    Criterion c{1, "folding: g0 types, integral structure constants, commutator table", {}};
    auto t0 = Clock::now();
    for (auto [t, a, want] : std::vector<std::tuple<const char*, const char*, const char*>>{
             {"A3", "order2", "C2"}, {"A5", "order2", "C3"}, {"D4", "order2", "B3"},
             {"D4", "order3", "G2"}, {"A2", "order2", "A1"}, {"A4", "order2", "B2"}}) {
        auto F = fold(t, a);
        std::string name = std::string(t) + " " + a;
        c.lines.push_back({name + " g0 type", F.g0_label.str() == want, F.g0_label.str()});
        c.lines.push_back({name + " integral structure constants", F.nonintegral.empty(),
                           std::to_string(F.nonintegral.size()) + " non-integral constants"});
        c.lines.push_back(summary(name + " commutator table", verify_commutator_table(F)));
    }
    c.lines.push_back(timed("runtime", t0, 10));
    return c;
}

Criterion identities() {
    Criterion c{2, "identity battery", {}};
    auto t0 = Clock::now();
    auto A3 = shared_fold("A3", "order2");
    auto A2 = shared_fold("A2", "order2");
    auto A1 = shared_fold("A1", "id");
    c.lines.push_back(summary("case (a) on A3", garland_battery(A3, GarlandCase::a)));
    c.lines.push_back(summary("case (b) on A3", garland_battery(A3, GarlandCase::b)));
    c.lines.push_back(summary("case (c-i) on A2, printed", garland_battery(A2, GarlandCase::c1)));
    c.lines.push_back(summary("case (c-i) on A2, corrected", garland_battery(A2, GarlandCase::c1, Variant::corrected)));
    c.lines.push_back(summary("case (c-ii) on A2", garland_battery(A2, GarlandCase::c2)));
    c.lines.push_back(summary("case (c-iii) on A2, printed", garland_battery(A2, GarlandCase::c3)));
    c.lines.push_back(summary("case (c-iii) on A2, corrected", garland_battery(A2, GarlandCase::c3, Variant::corrected)));
    c.lines.push_back(summary("untwisted on A1, printed", garland_battery(A1, GarlandCase::untwisted)));
    c.lines.push_back(
        summary("untwisted on A1, corrected", garland_battery(A1, GarlandCase::untwisted, Variant::corrected)));
    std::vector<CheckEntry> hd;
    for (auto F : {A3, A2}) {
        auto r = verify_hyperdegree(F, 50);
        hd.insert(hd.end(), r.begin(), r.end());
    }
    c.lines.push_back(summary("hyperdegree drop (" + std::to_string(hd.size()) + " pairs)", hd));
    std::vector<CheckEntry> lam;
    std::set<int> orbit_sizes;
    for (auto F : {A3, shared_fold("D4", "order3")})
        for (auto& mu : F->R0.pos) {
            auto r = verify_lambda_relation(*F, mu, 4);
            lam.insert(lam.end(), r.begin(), r.end());
            orbit_sizes.insert(F->is_long(mu) ? 1 : F->m);
        }
    auto s = summary("Lambda relation to u^4", lam);
    s.detail += ", orbit sizes";
    for (int o : orbit_sizes) s.detail += " " + std::to_string(o);
    s.pass = s.pass && orbit_sizes.count(1) && orbit_sizes.size() >= 2;
    c.lines.push_back(s);
    c.lines.push_back(timed("runtime", t0, 120));
    return c;
}

Criterion psi() {
    Criterion c{3, "psi: involution, multiplicativity, action on Lambda", {}};
    std::vector<CheckEntry> all;
    for (auto [t, a] : std::vector<std::pair<const char*, const char*>>{{"A3", "order2"}, {"A2", "order2"}}) {
        auto r = verify_psi(shared_fold(t, a), 100);
        all.insert(all.end(), r.begin(), r.end());
    }
    c.lines.push_back(summary("involution and multiplicativity, 100 samples each on A3 and A2", all));
    auto r = verify_psi_lambda(shared_fold("A3", "order2"), 3);
    std::vector<CheckEntry> printed, inverse;
    for (auto& e : r) (e.check.find("^-1") != std::string::npos ? inverse : printed).push_back(e);
    c.lines.push_back(summary("psi(Lambda_r) = -Lambda_r, r <= 3 (printed)", printed));
    c.lines.push_back(summary("psi(Lambda(u)) = Lambda(u)^-1, r <= 3", inverse));
    return c;
}

CheckEntry character_line(const std::string& name, const GradedCharacter& got, const GradedCharacter& want) {
    return {name, got == want, "dim " + std::to_string(char_dim(got)) + " vs oracle " + std::to_string(char_dim(want))};
}

Criterion untwisted() {
    Criterion c{4, "untwisted sanity: A1 Weyl modules", {}};
    auto A1 = shared_fold("A1", "id");
    auto D = build_affine_data(A1);
    for (int m = 1; m <= 4; ++m) {
        auto W = build_weyl(A1, {m});
        c.lines.push_back({"dim W(" + std::to_string(m) + " omega) = 2^" + std::to_string(m), W.dim() == (1 << m),
                           std::to_string(W.dim())});
        c.lines.push_back(character_line("character of W(" + std::to_string(m) + " omega)", graded_character(W),
                                         demazure_oracle(D, 1, {m})));
    }
    return c;
}

Criterion weyl_demazure() {
    Criterion c{5, "Weyl modules equal level one Demazure modules", {}};
    auto t0 = Clock::now();
    auto A3 = shared_fold("A3", "order2");
    auto G = shared_fold("D4", "order3");
    for (auto [F, lam, name] : std::vector<std::tuple<std::shared_ptr<const FoldedAlgebra>, IVec, std::string>>{
             {A3, {1, 0}, "A3 omega_1"}, {A3, {0, 1}, "A3 omega_2"}, {A3, {1, 1}, "A3 omega_1+omega_2"},
             {G, {1, 0}, "D4(3) omega_1"}}) {
        auto r = verify_wd(F, lam);
        c.lines.push_back(summary(name, r.entries));
    }
    c.lines.push_back(timed("runtime", t0, 600));
    return c;
}

Criterion restriction() {
    Criterion c{6, "restriction of untwisted Weyl modules", {}};
    c.lines.push_back(summary("A3 omega_1", verify_restriction(shared_fold("A3", "order2"), {1, 0}).entries));
    c.lines.push_back(
        summary("A2 lambda = 2 (lift omega_1 of A2)", verify_restriction(shared_fold("A2", "order2"), {2}).entries));
    return c;
}

Criterion demazure_ops() {
    Criterion c{7, "Demazure operators and the coroot display", {}};
    std::mt19937 rng(5);
    auto A3 = build_affine_data(shared_fold("A3", "order2"));
    long bad = 0, n = 0;
    for (int t = 0; t < 20; ++t) {
        auto ch = random_character(A3, rng, 1 + t % 3);
        for (int i = 0; i <= A3.n0; ++i, ++n) {
            auto once = demazure_op(A3, i, ch);
            bad += demazure_op(A3, i, once) != once;
        }
    }
    c.lines.push_back({"D_i^2 = D_i on 20 random characters", bad == 0,
                       std::to_string(n - bad) + "/" + std::to_string(n)});
    long pairs = 0;
    bad = 0;
    for (auto [t, a] : std::vector<std::pair<const char*, const char*>>{{"A3", "order2"}, {"D4", "order3"}}) {
        auto D = build_affine_data(shared_fold(t, a));
        AffineWeight L{2, IVec(D.n0, 1), 0};
        if (!D.dominant(L)) L.level = 10;
        for (auto& [u, v] : braid_pairs(D)) {
            ++pairs;
            bad += demazure_character(D, L, u) != demazure_character(D, L, v);
        }
    }
    c.lines.push_back({"independence of the reduced word", bad == 0 && pairs >= 3,
                       std::to_string(pairs - bad) + "/" + std::to_string(pairs) + " pairs"});
    for (auto [t, a] : std::vector<std::pair<const char*, const char*>>{
             {"A1", "id"}, {"A3", "order2"}, {"D4", "order3"}, {"A2", "order2"}})
        c.lines.push_back(summary(std::string("coroot display, s <= 3, ") + t + " " + a,
                                  verify_coroot_display(build_affine_data(shared_fold(t, a)), 3)));
    return c;
}

Criterion lattice() {
    Criterion c{8, "integral lattices", {}};
    for (auto [t, a, lam, name] : std::vector<std::tuple<const char*, const char*, IVec, std::string>>{
             {"A1", "id", {2}, "A1 2 omega"}, {"A3", "order2", {1, 0}, "A3 omega_1"}}) {
        auto W = build_weyl(shared_fold(t, a), lam);
        auto L = integral_lattice(W, 6);
        std::string divs;
        for (auto& b : L.blocks)
            for (auto& d : b.divisors) divs += " " + d.get_str();
        c.lines.push_back({name + " rank = dim", L.rank == W.dim(),
                           "rank " + std::to_string(L.rank) + ", dim " + std::to_string(W.dim()) + ", divisors" + divs});
    }
    auto L = integral_lattice(build_weyl(shared_fold("A2", "order2"), {2}), 6);
    bool refused = false;
    std::string why;
    try {
        lattice_dim_mod_p(L, 2);
    } catch (const std::invalid_argument& e) {
        refused = true;
        why = e.what();
    }
    c.lines.push_back({"p = 2 refused for A2", refused, why});
    return c;
}

Criterion soundness() {
    Criterion c{9, "undersized saturation bound is detected", {}};
    BuildOptions bad;
    bad.B0 = 0;
    bad.max_increments = 0;
    bool thrown = false;
    std::string what;
    try {
        auto M = build_weyl(shared_fold("A1", "id"), {3}, bad);
        what = "returned dim " + std::to_string(M.dim());
    } catch (const Unstabilized& e) {
        thrown = true;
        what = e.what();
    }
    c.lines.push_back({"A1 3 omega with B0 = 0, no increments", thrown, what});
    return c;
}

}  // namespace

int main() {
    std::vector<std::function<Criterion()>> all{folding, identities, psi, untwisted, weyl_demazure,
                                                 restriction, demazure_ops, lattice, soundness};
    int failed = 0;
    for (auto& f : all) {
        Criterion c;
        try {
            c = f();
        } catch (const std::exception& e) {
            c.lines.push_back({"exception", false, e.what()});
        }
        failed += !c.pass();
        std::cout << (c.pass() ? "PASS" : "FAIL") << " " << c.id << " " << c.title << "\n";
        for (auto& e : c.lines)
            std::cout << "    " << (e.pass ? "ok   " : "FAIL ") << e.check << (e.detail.empty() ? "" : ": " + e.detail)
                      << "\n";
        std::cout.flush();
    }
    std::cout << (all.size() - failed) << "/" << all.size() << " criteria pass\n";
    return failed ? 1 : 0;
}
