// Command line front end. Exit codes: 0 success, 1 verified mismatch, 2 usage error,
// 3 unstabilized construction or internal error.

#include "tca/tca.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <iostream>
#include <sstream>

using namespace tca;
using json = nlohmann::ordered_json;

namespace {

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Job {
    std::string command, type = "A3", aut = "order2", lambda = "", lift = "", format = "json", which;
    std::string gcase = "all", variant = "printed";
    int level = 1, B0 = -1, max_inc = 5, bound = 6;
    long prime = 0;
    bool strict = false;
};

IVec parse_ints(const std::string& s, const char* what) {
    IVec v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            v.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw Usage(std::string("bad integer list for ") + what + ": " + s);
        }
    }
    return v;
}

std::shared_ptr<const FoldedAlgebra> algebra(const Job& j) {
    CartanLabel L;
    try {
        L = CartanLabel::parse(j.type);
    } catch (const std::exception& e) {
        throw Usage(e.what());
    }
    try {
        if (j.aut.find(',') != std::string::npos || std::isdigit((unsigned char)j.aut[0])) {
            IVec p = parse_ints(j.aut, "--aut");
            for (auto& x : p) --x;  // 1-based node images
            return std::make_shared<const FoldedAlgebra>(fold(L, make_automorphism(L, p)));
        }
        return std::make_shared<const FoldedAlgebra>(fold(L, make_automorphism(L, j.aut)));
    } catch (const std::invalid_argument& e) {
        throw Usage(e.what());
    }
}

IVec weight(const Job& j, const FoldedAlgebra& F) {
    if (j.lambda.empty()) throw Usage("--lambda is required");
    IVec lam = parse_ints(j.lambda, "--lambda");
    if ((int)lam.size() != F.n0())
        throw Usage("--lambda needs " + std::to_string(F.n0()) + " coordinates (g0 fundamental weights)");
    return lam;
}

json job_json(const Job& j) {
    json o;
    o["command"] = j.command + (j.which.empty() ? "" : " " + j.which);
    o["type"] = j.type;
    o["aut"] = j.aut;
    if (!j.lambda.empty()) o["lambda"] = parse_ints(j.lambda, "--lambda");
    if (j.command == "demazure" || j.command == "affine-char") o["level"] = j.level;
    if (j.command == "lattice") o["bound"] = j.bound;
    return o;
}

json character_json(const GradedCharacter& ch) {
    json a = json::array();
    for (auto& [k, c] : ch) a.push_back({{"weight", k.first}, {"grade", k.second}, {"mult", c}});
    return a;
}

json report_json(const std::vector<CheckEntry>& r) {
    json a = json::array();
    for (auto& e : r) a.push_back({{"check", e.check}, {"pass", e.pass}, {"detail", e.detail}});
    return a;
}

BuildOptions options(const Job& j) {
    BuildOptions o;
    o.B0 = j.B0;
    o.max_increments = j.max_inc;
    return o;
}

void emit(const Job& j, const json& out) {
    if (j.format == "json") {
        std::cout << out.dump(2) << "\n";
        return;
    }
    if (j.format == "csv") {
        if (out.contains("character")) {
            size_t n = out["character"].empty() ? 0 : out["character"][0]["weight"].size();
            for (size_t i = 0; i < n; ++i) std::cout << "weight" << i + 1 << ",";
            std::cout << "grade,mult\n";
            for (auto& e : out["character"]) {
                for (auto& w : e["weight"]) std::cout << w.get<int>() << ",";
                std::cout << e["grade"].get<int>() << "," << e["mult"].get<long>() << "\n";
            }
        }
        if (out.contains("report")) {
            std::cout << "check,pass,detail\n";
            for (auto& e : out["report"])
                std::cout << '"' << e["check"].get<std::string>() << "\"," << (e["pass"].get<bool>() ? 1 : 0) << ",\""
                          << e["detail"].get<std::string>() << "\"\n";
        }
        if (!out.contains("character") && !out.contains("report")) std::cout << out["result"].dump() << "\n";
        return;
    }
    // text
    std::cout << out["job"]["command"].get<std::string>() << " " << out["job"]["type"].get<std::string>() << " "
              << out["job"]["aut"].get<std::string>() << "\n";
    for (auto& [k, v] : out["result"].items()) std::cout << "  " << k << ": " << v.dump() << "\n";
    if (out.contains("character")) {
        std::cout << "  weight  grade  mult\n";
        for (auto& e : out["character"])
            std::cout << "  " << vstr(e["weight"].get<IVec>()) << "  " << e["grade"].get<int>() << "  "
                      << e["mult"].get<long>() << "\n";
    }
    if (out.contains("report"))
        for (auto& e : out["report"])
            std::cout << "  " << (e["pass"].get<bool>() ? "ok   " : "FAIL ") << e["check"].get<std::string>()
                      << (e["detail"].get<std::string>().empty() ? "" : ": " + e["detail"].get<std::string>())
                      << "\n";
}

int run(const Job& j) {
    json out;
    out["job"] = job_json(j);
    out["result"] = json::object();
    json res;
    int code = 0;
    auto F = algebra(j);

    if (j.command == "fold") {
        res["g0_type"] = F->g0_label.str();
        res["order"] = F->m;
        json dims = json::array();
        for (int e = 0; e < F->m; ++e) dims.push_back(eps_dim(*F, e));
        res["dims"] = dims;
        res["theta1"] = F->theta1;
        json R = json::array();
        for (auto& Re : F->Rpos) {
            json a = json::array();
            for (auto& r : Re) a.push_back(r);
            R.push_back(a);
        }
        res["positive_roots_by_label"] = R;
        json sh = json::array();
        for (auto& s : F->shorts) sh.push_back(s);
        res["short_roots"] = sh;
        res["nonintegral_constants"] = F->nonintegral.size();
        auto rep = verify_commutator_table(*F);
        out["report"] = report_json(rep);
    } else if (j.command == "identities") {
        std::vector<std::pair<std::string, GarlandCase>> cases{
            {"a", GarlandCase::a},   {"b", GarlandCase::b},   {"c1", GarlandCase::c1},
            {"c2", GarlandCase::c2}, {"c3", GarlandCase::c3}, {"untwisted", GarlandCase::untwisted}};
        Variant v = j.variant == "corrected" ? Variant::corrected : Variant::printed;
        std::vector<CheckEntry> rep;
        bool any = false;
        for (auto& [name, c] : cases) {
            if (j.gcase != "all" && j.gcase != name) continue;
            any = true;
            auto r = garland_battery(F, c, v);
            rep.insert(rep.end(), r.begin(), r.end());
        }
        if (!any) throw Usage("unknown --case " + j.gcase);
        if (j.gcase == "all") {
            for (auto& r : {verify_hyperdegree(F, 50), verify_psi(F, 100), verify_psi_lambda(F, 3)})
                rep.insert(rep.end(), r.begin(), r.end());
            for (auto& mu : F->R0.pos) {
                auto r = verify_lambda_relation(*F, mu, 4);
                rep.insert(rep.end(), r.begin(), r.end());
            }
        }
        long bad = 0;
        for (auto& e : rep) bad += !e.pass;
        res["checks"] = rep.size();
        res["failures"] = bad;
        out["report"] = report_json(rep);
        code = bad ? 1 : 0;
    } else if (j.command == "weyl" || j.command == "demazure") {
        IVec lam = weight(j, *F);
        if (j.command == "demazure" && j.level < 1) throw Usage("--level must be positive");
        auto M = j.command == "weyl" ? build_weyl(F, lam, options(j)) : build_demazure(F, j.level, lam, options(j));
        res["dim"] = M.dim();
        res["hyperdegree_bound"] = M.B;
        out["character"] = character_json(graded_character(M));
        out["report"] = report_json(M.certificate);
    } else if (j.command == "restrict") {
        IVec lam = weight(j, *F);
        std::optional<IVec> lift;
        if (!j.lift.empty()) lift = parse_ints(j.lift, "--lift");
        auto R = restrict_untwisted(F, lam, lift, nullptr, options(j));
        res["dim"] = R.dim();
        res["ambient_weight"] = R.lam_ambient;
        out["character"] = character_json(graded_character(R));
        out["report"] = report_json(R.ambient.certificate);
    } else if (j.command == "affine-char") {
        IVec lam = weight(j, *F);
        auto ch = demazure_oracle(build_affine_data(F), j.level, lam);
        res["dim"] = char_dim(ch);
        out["character"] = character_json(ch);
    } else if (j.command == "verify") {
        IVec lam = weight(j, *F);
        Comparison c;
        if (j.which == "wd") {
            c = verify_wd(F, lam, j.strict, options(j));
        } else {
            std::optional<IVec> lift;
            if (!j.lift.empty()) lift = parse_ints(j.lift, "--lift");
            c = verify_restriction(F, lam, lift, options(j));
        }
        res["pass"] = c.pass();
        if (!c.pass()) {
            json chars;
            for (auto& [k, v] : c.characters) chars[k] = character_json(v);
            res["characters"] = chars;
        }
        if (j.which == "wd" && F->a2n) res["mode"] = "report-only";
        out["report"] = report_json(c.entries);
        code = c.pass() || (j.which == "wd" && F->a2n) ? 0 : 1;
    } else if (j.command == "lattice") {
        IVec lam = weight(j, *F);
        auto M = build_weyl(F, lam, options(j));
        auto L = integral_lattice(M, j.bound);
        res["rank"] = L.rank;
        res["dim"] = M.dim();
        json blocks = json::array();
        for (auto& b : L.blocks) {
            json d = json::array();
            for (auto& x : b.divisors) d.push_back(x.get_str());
            blocks.push_back({{"weight", b.weight}, {"grade", b.grade}, {"dim", b.dim}, {"rows", b.rows}, {"divisors", d}});
        }
        res["blocks"] = blocks;
        if (j.prime) {
            try {
                res["dim_mod_p"] = lattice_dim_mod_p(L, j.prime);
            } catch (const std::invalid_argument& e) {
                throw Usage(e.what());
            }
        }
    }
    out["result"] = res;
    emit(j, out);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twisted current algebras: folding, identities, Weyl and Demazure modules"};
    app.require_subcommand(1);
    Job j;
    auto common = [&](CLI::App* s, bool lam) {
        s->add_option("--type", j.type, "ambient Cartan type, e.g. A3, D4")->required();
        s->add_option("--aut", j.aut, "id, order2, order3 or a comma list of 1-based node images");
        s->add_option("--format", j.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
        if (lam) {
            s->add_option("--lambda", j.lambda, "weight in g0 fundamental coordinates, comma separated")->required();
            s->add_option("--B0", j.B0, "initial hyperdegree bound for relations");
            s->add_option("--max-increments", j.max_inc, "number of times the bound may grow");
        }
    };
    auto* f = app.add_subcommand("fold", "folded algebra data and commutator table check");
    common(f, false);
    auto* id = app.add_subcommand("identities", "envelope identity battery");
    common(id, false);
    id->add_option("--case", j.gcase, "a, b, c1, c2, c3, untwisted or all");
    id->add_option("--variant", j.variant, "printed or corrected")->check(CLI::IsMember({"printed", "corrected"}));
    auto* w = app.add_subcommand("weyl", "local graded Weyl module");
    common(w, true);
    auto* d = app.add_subcommand("demazure", "Demazure module");
    common(d, true);
    d->add_option("--level", j.level, "level")->required();
    auto* r = app.add_subcommand("restrict", "restriction of the untwisted Weyl module");
    common(r, true);
    r->add_option("--lift", j.lift, "ambient dominant weight restricting to lambda");
    auto* a = app.add_subcommand("affine-char", "graded character from Demazure operators");
    common(a, true);
    a->add_option("--level", j.level, "level");
    auto* v = app.add_subcommand("verify", "verify wd (Weyl = Demazure) or restriction");
    common(v, true);
    v->add_option("which", j.which, "wd or restriction")->required()->check(CLI::IsMember({"wd", "restriction"}));
    v->add_flag("--strict", j.strict, "refuse types outside the theorem's list");
    v->add_option("--lift", j.lift, "ambient dominant weight restricting to lambda");
    auto* l = app.add_subcommand("lattice", "elementary divisors of the integral form");
    common(l, true);
    l->add_option("--bound", j.bound, "hyperdegree bound for divided-power monomials");
    l->add_option("--prime", j.prime, "report the dimension over F_p");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    j.command = app.get_subcommands().front()->get_name();

    auto fail = [&](int code, const std::string& kind, const std::string& why) {
        json out;
        try {
            out["job"] = job_json(j);
        } catch (...) {
            out["job"] = {{"command", j.command}};
        }
        out["result"] = {{"error", kind}, {"reason", why}};
        if (j.format == "json")
            std::cout << out.dump(2) << "\n";
        std::cerr << (why.rfind(kind, 0) == 0 ? why : kind + ": " + why) << "\n";
        return code;
    };
    try {
        return run(j);
    } catch (const Usage& e) {
        return fail(2, "usage", e.what());
    } catch (const std::invalid_argument& e) {
        return fail(2, "usage", e.what());
    } catch (const Unstabilized& e) {
        return fail(3, "unstabilized", e.what());
    } catch (const std::exception& e) {
        return fail(3, "internal", e.what());
    }
}
