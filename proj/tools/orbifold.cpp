// Command-line front end. Exit status: 0 success, 1 a check failed, 2 bad input.
#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "orb/error.hpp"
#include "orb/euler.hpp"
#include "orb/io.hpp"
#include "orb/statesum3d.hpp"
#include "orb/tqft2d.hpp"

using namespace orb;
using io::json;

namespace {

struct CheckFailure {
    std::string what;
};

struct Config {
    std::string mode = "exact";
    double tol = kDefaultTol;
    bool json_out = false;
    int jobs = 1;
};

// "name" or "name:p1,p2" selects a builtin; anything else is a file.
bool split_builtin(const std::string& spec, const std::vector<std::string>& names, std::string& name,
                   std::vector<int>& params) {
    static const std::map<std::string, std::string> alias = {
        {"s2", "sphere2"}, {"t2", "torus2"}, {"s3", "sphere3"}, {"t3", "torus3"}, {"genus", "surface_genus"}};
    auto colon = spec.find(':');
    name = spec.substr(0, colon);
    if (auto it = alias.find(name); it != alias.end()) name = it->second;
    if (std::find(names.begin(), names.end(), name) == names.end()) return false;
    params.clear();
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                params.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                fail("BadParams", "bad parameter '" + tok + "' in '" + spec + "'");
            }
        }
    }
    return true;
}

Triangulation load_manifold(const std::string& spec) {
    std::string name;
    std::vector<int> params;
    if (split_builtin(spec, builtin_manifold_names(), name, params)) return builtin_manifold(name, params);
    return io::triangulation_from_json(io::read_json_file(spec));
}

Mode mode_of(const Config& cfg) { return cfg.mode == "float" ? Mode::Float : Mode::Exact; }

FrobeniusData load_algebra(const std::string& path, const Config& cfg) {
    auto a = io::algebra_from_json(io::read_json_file(path));
    return cfg.mode == "float" ? to_mode(a, Mode::Float) : a;
}

FusionData load_category(const std::string& spec, const Config& cfg) {
    std::string name;
    std::vector<int> params;
    if (split_builtin(spec, builtin_category_names(), name, params))
        return builtin_category(name, params, mode_of(cfg));
    auto c = io::category_from_json(io::read_json_file(spec));
    return cfg.mode == "float" ? to_mode(c, Mode::Float) : c;
}

void emit_report(const Report& r, const Config& cfg, json extra = json::object()) {
    if (cfg.json_out) {
        json j = io::to_json(r);
        for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
        std::cout << j.dump(1) << "\n";
    } else {
        for (const auto& x : r.records) {
            std::cout << (x.pass ? "PASS " : "FAIL ") << x.name << "  residual " << format_double(x.residual);
            if (!x.pass && !x.witness.empty()) {
                std::cout << "  at";
                for (int w : x.witness) std::cout << " " << w;
            }
            if (!x.note.empty()) std::cout << "  (" << x.note << ")";
            std::cout << "\n";
        }
        std::cout << (r.all_pass() ? "all " + std::to_string(r.records.size()) + " checks pass"
                                   : "some checks failed")
                  << ", max residual " << format_double(r.max_residual()) << "\n";
    }
    if (!r.all_pass()) throw CheckFailure{"report"};
}

void emit_value(const Scalar& z, const Config& cfg, json extra) {
    if (cfg.json_out) {
        extra["value"] = io::to_json(z);
        extra["text"] = z.str();
        std::cout << extra.dump(1) << "\n";
    } else {
        std::cout << z.str() << "\n";
    }
}

bool same_value(const Scalar& a, const Scalar& b, double tol) {
    if (a.is_exact() && b.is_exact()) return a.identical(b);
    return distance(a, b) <= tol * std::max(1.0, b.abs());
}

// Random walk through oriented moves; the invariant must not change.
void pachner_fuzz(int dim, const std::string& data, const std::string& base, int steps, uint64_t seed,
                  int max_size, const Config& cfg) {
    std::mt19937_64 rng(seed);
    Triangulation t = load_manifold(base.empty() ? (dim == 2 ? "sphere2" : "sphere3") : base);
    if (t.dim() != dim) fail("BadParams", "base triangulation has the wrong dimension");
    std::function<Scalar(const Triangulation&)> eval;
    if (dim == 2) {
        auto a = load_algebra(data, cfg);
        eval = [a, &cfg](const Triangulation& m) {
            return evaluate_closed_2d(m, a, Normalization::Orbifold, cfg.tol);
        };
    } else {
        auto c = load_category(data, cfg);
        eval = [c, &cfg](const Triangulation& m) { return tv_evaluate_closed(m, c, cfg.tol); };
    }
    const std::vector<MoveKind> kinds = dim == 2 ? std::vector<MoveKind>{MoveKind::M22, MoveKind::M13, MoveKind::M31}
                                                 : std::vector<MoveKind>{MoveKind::M23, MoveKind::M32,
                                                                         MoveKind::M14, MoveKind::M41};
    const Scalar ref = eval(t);
    Report rep;
    json trace = json::array();
    for (int s = 0; s < steps; ++s) {
        MoveKind k = kinds[rng() % kinds.size()];
        if (t.num_simplices() >= max_size && (k == MoveKind::M13 || k == MoveKind::M14 || k == MoveKind::M23))
            k = dim == 2 ? MoveKind::M31 : MoveKind::M41;
        auto sites = enumerate_oriented_moves(t, k);
        if (sites.empty()) {
            trace.push_back({{"step", s}, {"move", to_string(k)}, {"skipped", true}});
            continue;
        }
        const auto& site = sites[rng() % sites.size()];
        std::string key = move_template_key(t, site);
        t = apply_pachner_move(t, site);
        Scalar z = eval(t);
        CheckRecord r;
        r.name = "step " + std::to_string(s) + " " + key;
        r.residual = distance(z, ref);
        r.exact = z.is_exact() && ref.is_exact();
        r.pass = same_value(z, ref, cfg.tol);
        r.note = std::to_string(t.num_simplices()) + " simplices";
        rep.records.push_back(r);
        trace.push_back({{"step", s}, {"move", key}, {"simplices", t.num_simplices()}, {"value", io::to_json(z)}});
    }
    if (!cfg.json_out) std::cout << "reference value " << ref.str() << "\n";
    emit_report(rep, cfg, {{"reference", io::to_json(ref)}, {"seed", seed}, {"trace", trace}});
}

void euler_command(const std::string& complex_path, const std::string& weights_path, const Config& cfg) {
    auto x = io::stratified_from_json(io::read_json_file(complex_path));
    auto strata = euler_characteristics(x);
    EulerWeights w;
    if (!weights_path.empty()) w = io::weights_from_json(io::read_json_file(weights_path));
    Scalar z = z_euler_evaluate(x, w);
    if (cfg.mode == "float") z = z.to_float();
    json list = json::array();
    for (const auto& s : strata)
        list.push_back({{"label", s.label}, {"dim", s.dim}, {"chi", s.chi}, {"chi_tilde", s.chi_tilde}});
    if (cfg.json_out) {
        std::cout << json{{"strata", list}, {"value", io::to_json(z)}, {"text", z.str()}}.dump(1) << "\n";
    } else {
        for (const auto& s : strata)
            std::cout << s.label << " (dim " << s.dim << "): chi " << s.chi << ", chi~ " << s.chi_tilde << "\n";
        std::cout << z.str() << "\n";
    }
}

void export_builtin(const std::string& kind, const std::string& spec, const std::string& out, const Config& cfg) {
    json j;
    std::string name;
    std::vector<int> params;
    if (kind == "manifold") {
        j = io::to_json(load_manifold(spec));
    } else if (kind == "category") {
        if (!split_builtin(spec, builtin_category_names(), name, params)) fail("UnknownName", spec);
        j = io::to_json(builtin_category(name, params, mode_of(cfg)));
    } else if (kind == "algebra") {
        auto colon = spec.find(':');
        name = spec.substr(0, colon);
        int p = colon == std::string::npos ? 0 : std::stoi(spec.substr(colon + 1));
        FrobeniusData a;
        if (name == "trivial") a = trivial_algebra(mode_of(cfg));
        else if (name == "zn" && p >= 1) a = group_algebra(cyclic_group_table(p), mode_of(cfg));
        else if (name == "sn" && p >= 1) a = group_algebra(symmetric_group_table(p), mode_of(cfg));
        else if (name == "matrix" && p >= 1) a = matrix_algebra(p, mode_of(cfg));
        else fail("UnknownName", "algebra '" + spec + "' (trivial, zn:N, sn:K, matrix:N)");
        j = io::to_json(a);
    } else {
        fail("UnknownName", "kind '" + kind + "' (manifold, algebra, category)");
    }
    if (out.empty()) std::cout << io::format_json(j);
    else io::write_json_file(out, j);
}

void census(const Config& cfg) {
    json j = json::object();
    for (MoveKind k : {MoveKind::M22, MoveKind::M13, MoveKind::M31, MoveKind::M23, MoveKind::M32, MoveKind::M14,
                       MoveKind::M41}) {
        json keys = json::array();
        for (const auto& [key, rep] : oriented_move_representatives(k)) keys.push_back(key);
        j[to_string(k)] = keys;
    }
    if (cfg.json_out) {
        std::cout << j.dump(1) << "\n";
    } else {
        for (auto it = j.begin(); it != j.end(); ++it) std::cout << it.key() << ": " << it.value().size() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orbifold state sums for 2D and 3D defect TQFTs"};
    app.require_subcommand(1);
    Config cfg;
    if (const char* env = std::getenv("ORBIFOLD_TOL")) {
        try {
            cfg.tol = std::stod(env);
        } catch (const std::exception&) {
            std::cerr << "error: ORBIFOLD_TOL is not a number\n";
            return 2;
        }
    }
    app.add_option("--mode", cfg.mode, "Scalar mode")->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--tol", cfg.tol, "Comparison tolerance in float mode (default $ORBIFOLD_TOL or 1e-9)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--json", cfg.json_out, "Machine-readable output");
    app.add_option("-j,--jobs", cfg.jobs, "Worker bound (evaluation is sequential)")->check(CLI::PositiveNumber);

    std::string path, surface, algebra, manifold, category, complex_path, weights_path, base, kind, out;
    int dim = 3, steps = 10, max_size = 0;
    uint64_t seed = 1;

    auto* cf = app.add_subcommand("check-frobenius", "Check the Delta-separable symmetric Frobenius axioms");
    cf->add_option("algebra", path, "Algebra JSON")->required();
    auto* cd = app.add_subcommand("check-datum", "Check the ten constraints of a 3D orbifold datum");
    cd->add_option("category", path, "Category JSON or builtin name")->required();
    auto* cp = app.add_subcommand("check-pachner", "Compare both sides of every oriented Pachner move");
    cp->add_option("--dim", dim)->check(CLI::IsMember({2, 3}));
    cp->add_option("--data", path, "Algebra (dim 2) or category (dim 3)")->required();
    auto* e2 = app.add_subcommand("eval2d", "Evaluate a closed surface");
    e2->add_option("--surface", surface, "Builtin name or triangulation JSON")->required();
    e2->add_option("--algebra", algebra, "Algebra JSON")->required();
    auto* e3 = app.add_subcommand("eval3d", "Evaluate a closed 3-manifold");
    e3->add_option("--manifold", manifold, "Builtin name or triangulation JSON")->required();
    e3->add_option("--category", category, "Category JSON or builtin name")->required();
    auto* pf = app.add_subcommand("pachner-fuzz", "Random walk through oriented Pachner moves");
    pf->add_option("--dim", dim)->check(CLI::IsMember({2, 3}));
    pf->add_option("--data", path, "Algebra (dim 2) or category (dim 3)")->required();
    pf->add_option("--steps", steps)->check(CLI::NonNegativeNumber);
    pf->add_option("--seed", seed, "Seed of the mt19937_64 generator");
    pf->add_option("--base", base, "Starting triangulation (default sphere2 / sphere3)");
    pf->add_option("--max-size", max_size, "Above this many simplices only shrinking moves are used");
    auto* eu = app.add_subcommand("euler", "Symmetric Euler characteristics and the Euler theory");
    eu->add_option("--complex", complex_path, "Stratified complex JSON")->required();
    eu->add_option("--weights", weights_path, "Euler weights JSON");
    auto* ex = app.add_subcommand("export-builtin", "Write a builtin as JSON");
    ex->add_option("kind", kind, "manifold, algebra or category")->required();
    ex->add_option("name", path, "Builtin name, e.g. rp3, zn:3, vec_zn:2")->required();
    ex->add_option("-o,--output", out);
    auto* cs = app.add_subcommand("census", "Oriented move templates per move kind");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (cf->parsed()) {
            emit_report(check_frobenius_axioms(load_algebra(path, cfg), cfg.tol), cfg);
        } else if (cd->parsed()) {
            auto c = load_category(path, cfg);
            Report v = validate_fusion_data(c, cfg.tol);
            emit_report(v.all_pass() ? check_special_orbifold_datum(c, cfg.tol) : v, cfg);
        } else if (cp->parsed()) {
            if (dim == 2) emit_report(check_pachner_2d(load_algebra(path, cfg), cfg.tol), cfg);
            else emit_report(check_pachner_3d(load_category(path, cfg), cfg.tol), cfg);
        } else if (e2->parsed()) {
            auto m = load_manifold(surface);
            auto z = evaluate_closed_2d(m, load_algebra(algebra, cfg), Normalization::Orbifold, cfg.tol);
            emit_value(z, cfg, {{"surface", surface}, {"euler_characteristic", m.euler_characteristic()}});
        } else if (e3->parsed()) {
            auto m = load_manifold(manifold);
            auto z = tv_evaluate_closed(m, load_category(category, cfg), cfg.tol);
            emit_value(z, cfg, {{"manifold", manifold}, {"tetrahedra", m.num_simplices()}});
        } else if (pf->parsed()) {
            if (max_size <= 0) max_size = dim == 2 ? 40 : 24;
            pachner_fuzz(dim, path, base, steps, seed, max_size, cfg);
        } else if (eu->parsed()) {
            euler_command(complex_path, weights_path, cfg);
        } else if (ex->parsed()) {
            export_builtin(kind, path, out, cfg);
        } else if (cs->parsed()) {
            census(cfg);
        }
    } catch (const CheckFailure&) {
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        const std::string& c = e.code();
        return c == "InvalidDatum" || c == "InvalidFusionData" ? 1 : 2;
    } catch (const json::exception& e) {
        std::cerr << "error: ParseError: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
