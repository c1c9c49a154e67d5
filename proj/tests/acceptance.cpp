// One line per acceptance criterion: PASS/FAIL, a short measurement and the
// wall time against its budget. Exit status is nonzero if any line fails.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "oracles.hpp"
#include "orb/error.hpp"
#include "orb/euler.hpp"
#include "orb/statesum3d.hpp"
#include "orb/tqft2d.hpp"
#include "support.hpp"

using namespace orb;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail.clear();
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = s <= budget_s;
    if (!in_time) o.detail += " (over budget)";
    bool ok = o.pass && in_time;
    failures += !ok;
    std::printf("[%s] %d. %s: %s  [%.2f s / %.0f s]\n", ok ? "PASS" : "FAIL", id, title, o.detail.c_str(), s,
                budget_s);
    std::fflush(stdout);
}

std::set<std::string> keys_of(const std::map<std::string, std::pair<Triangulation, MoveSite>>& m) {
    std::set<std::string> out;
    for (const auto& [k, v] : m) out.insert(k);
    return out;
}

nlohmann::json manifest() {
    std::ifstream in(std::string(ORB_SOURCE_DIR) + "/tests/data/move_templates.json");
    return nlohmann::json::parse(in);
}

std::set<std::string> manifest_keys(const nlohmann::json& j, const char* kind) {
    auto v = j.at(kind).get<std::vector<std::string>>();
    return {v.begin(), v.end()};
}

Triangulation random_walk(Triangulation t, int steps, std::mt19937_64& rng) {
    const MoveKind kinds[] = {MoveKind::M23, MoveKind::M32, MoveKind::M14, MoveKind::M41};
    for (int s = 0; s < steps; ++s) {
        auto sites = enumerate_oriented_moves(t, kinds[rng() % 4]);
        if (!sites.empty()) t = apply_pachner_move(t, sites[rng() % sites.size()]);
    }
    return t;
}

std::map<std::string, int> failing_by_kind(const Report& r) {
    std::map<std::string, int> out;
    for (const auto& x : r.records)
        if (!x.pass) out[x.name.substr(0, 3)]++;
    return out;
}

int count_prefix(const Report& r, const std::string& p) {
    int n = 0;
    for (const auto& x : r.records) n += x.name.rfind(p, 0) == 0;
    return n;
}

std::string str(double x) {
    char b[32];
    std::snprintf(b, sizeof b, "%.3g", x);
    return b;
}

}  // namespace

int main() {
    criterion(1, "oriented-move census", 1.0, [] {
        Outcome o;
        std::map<Vid, Rational> h{{0, 1}, {1, 2}, {2, 3}};
        std::set<std::string> k13;
        for (int sign : {1, -1}) {
            auto t = build_triangulation(2, h, {{0, 1, 2}}, {sign});
            auto sites = enumerate_oriented_moves(t, MoveKind::M13);
            o.require(sites.size() == 4, "1-3 sites per face and sign != 4");
            for (const auto& s : sites) k13.insert(move_template_key(t, s));
        }
        auto m = manifest();
        auto k23 = keys_of(oriented_move_representatives(MoveKind::M23));
        auto k14 = keys_of(oriented_move_representatives(MoveKind::M14));
        auto k22 = keys_of(oriented_move_representatives(MoveKind::M22));
        o.require(k13 == manifest_keys(m, "1-3"), "1-3 classes differ from the manifest");
        o.require(k22 == manifest_keys(m, "2-2"), "2-2 classes differ from the manifest");
        o.require(k23 == manifest_keys(m, "2-3"), "2-3 templates differ from the manifest");
        o.require(k14 == manifest_keys(m, "1-4"), "1-4 templates differ from the manifest");
        o.require(k23.size() == 20 && k14.size() == 10, "wrong 3D counts");
        if (o.pass)
            o.detail = "4 + 4 oriented 1-3 classes, " + std::to_string(k22.size()) + " 2-2, " +
                       std::to_string(k23.size()) + " 2-3, " + std::to_string(k14.size()) + " 1-4 templates";
        return o;
    });

    criterion(2, "2D orbifold = covering count", 10.0, [] {
        Outcome o;
        std::vector<std::pair<std::string, oracle::Table>> groups = {
            {"Z/2", cyclic_group_table(2)}, {"Z/3", cyclic_group_table(3)}, {"S3", symmetric_group_table(3)}};
        std::string vals;
        for (const auto& [name, table] : groups) {
            auto a = group_algebra(table);
            for (int g : {1, 2}) {
                Scalar z = evaluate_closed_2d(builtin_manifold("surface_genus", {g}), a);
                Scalar expect = Scalar::ratio(oracle::surface_hom_count(table, g), static_cast<long>(table.size()));
                o.require(z.identical(expect), name + " genus " + std::to_string(g) + ": " + z.str() +
                                                   " != " + expect.str());
                vals += (vals.empty() ? "" : " ") + name + ",g" + std::to_string(g) + "=" + z.str();
            }
        }
        if (o.pass) o.detail = vals;
        return o;
    });

    criterion(3, "2D Pachner invariance", 5.0, [] {
        Outcome o;
        auto z3 = group_algebra(cyclic_group_table(3));
        auto rep = check_pachner_2d(z3);
        int n22 = count_prefix(rep, "2-2"), n13 = count_prefix(rep, "1-3");
        for (const auto& r : rep.records)
            o.require(r.pass && r.residual == 0.0 && r.exact, r.name + " not exactly invariant");
        auto bad = rescale_counit(z3, Scalar::ratio(1, 3));
        o.require(bad.eps[0].is_one(), "rescaled counit is not delta_e");
        auto fb = failing_by_kind(check_pachner_2d(bad));
        o.require(fb["1-3"] > 0, "eps = delta_e did not break a 1-3 move");
        if (o.pass)
            o.detail = std::to_string(n22) + " 2-2 and " + std::to_string(n13) +
                       " 1-3 classes with residual 0; eps = delta_e fails " + std::to_string(fb["1-3"]) +
                       " 1-3 classes, " + std::to_string(fb["2-2"]) + " 2-2";
        return o;
    });

    criterion(4, "idempotent state spaces", 10.0, [] {
        Outcome o;
        std::vector<std::tuple<std::string, FrobeniusData, int>> cases = {{"k", trivial_algebra(), 1}};
        for (int n = 2; n <= 5; ++n) cases.emplace_back("Z/" + std::to_string(n), group_algebra(cyclic_group_table(n)), n);
        cases.emplace_back("S3", group_algebra(symmetric_group_table(3)), 3);
        std::string dims;
        for (const auto& [name, a, expect] : cases) {
            for (int k = 1; k <= 4; ++k) {
                auto s = orbifold_state_space(k, a);
                o.require(s.dim() == expect, name + " k=" + std::to_string(k) + " dim " + std::to_string(s.dim()));
                // P^2 evaluated as expand * (collapse * expand) * collapse,
                // which is the same exact product in a cheaper order.
                auto pp = s.expand * ((s.collapse * s.expand) * s.collapse);
                o.require(all_exact(s.projector) && max_distance(pp, s.projector) == 0.0,
                          name + " k=" + std::to_string(k) + " P^2 != P");
            }
            dims += (dims.empty() ? "" : " ") + name + ":" + std::to_string(expect);
        }
        if (o.pass) o.detail = "dims " + dims + " for k = 1..4, P^2 = P exactly";
        return o;
    });

    criterion(5, "point-insertion algebra", 10.0, [] {
        Outcome o;
        auto a = group_algebra(symmetric_group_table(3));
        auto alg = point_insertion_algebra(a);
        const int r = alg.dim, n = a.dim;
        o.require(r == 3, "dimension " + std::to_string(r));
        if (!o.pass) return o;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                for (int k = 0; k < r; ++k) {
                    o.require(alg.c(i, j, k).identical(alg.c(j, i, k)), "not commutative");
                    for (int l = 0; l < r; ++l) {
                        Scalar lhs, rhs;
                        for (int m = 0; m < r; ++m) {
                            lhs += alg.c(i, j, m) * alg.c(m, k, l);
                            rhs += alg.c(j, k, m) * alg.c(i, m, l);
                        }
                        o.require(lhs.identical(rhs), "not associative");
                    }
                }
        for (int i = 0; i < r; ++i)
            for (int k = 0; k < r; ++k) {
                Scalar left, right;
                for (int j = 0; j < r; ++j) {
                    left += alg.unit[j] * alg.c(j, i, k);
                    right += alg.unit[j] * alg.c(i, j, k);
                }
                o.require(left.identical(Scalar(i == k ? 1 : 0)) && right.identical(Scalar(i == k ? 1 : 0)),
                          "unit fails");
            }
        // Common basis: the images B of the invariant states in A. They must
        // span the oracle's centre, and multiplying them in A must reproduce
        // the computed structure constants.
        const Matrix& B = alg.to_algebra;
        Matrix zc = oracle::center_basis(a);
        Matrix both(n, zc.cols + r);
        for (int x = 0; x < n; ++x) {
            for (int j = 0; j < zc.cols; ++j) both(x, j) = zc(x, j);
            for (int j = 0; j < r; ++j) both(x, zc.cols + j) = B(x, j);
        }
        o.require(zc.cols == 3, "oracle centre has dimension " + std::to_string(zc.cols));
        o.require(rank(B, 0.0) == 3 && rank(both, 0.0) == 3, "label map is not onto the centre");
        Matrix bt = B.transpose(), gram = bt * B;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                Matrix p(n, 1);
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y)
                        for (int k = 0; k < n; ++k) p(k, 0) += B(x, i) * B(y, j) * a.m(x, y, k);
                Matrix c = solve(gram, bt * p, 0.0);
                o.require(max_distance(B * c, p) == 0.0, "product leaves the span");
                for (int k = 0; k < r; ++k) o.require(c(k, 0).identical(alg.c(i, j, k)), "structure constants differ");
            }
        Matrix u(r, 1), eta(n, 1);
        for (int j = 0; j < r; ++j) u(j, 0) = alg.unit[j];
        for (int x = 0; x < n; ++x) eta(x, 0) = a.eta[x];
        o.require(max_distance(B * u, eta) == 0.0, "unit does not map to 1");
        if (o.pass) o.detail = "dim 3, commutative, associative, unital; constants equal those of Z(k[S3])";
        return o;
    });

    criterion(6, "ten-constraint checker", 30.0, [] {
        Outcome o;
        for (int n : {2, 3}) {
            auto c = builtin_category("vec_zn", {n});
            for (int a = 0; a < n; ++a) o.require(psi(c, a).identical(Scalar(1)) && c.d[a].is_one(), "psi != 1");
            o.require(c.phi.identical(Scalar(n)), "phi != |labels|");
            auto rep = check_special_orbifold_datum(c);
            o.require(rep.records.size() == 10, "not ten constraints");
            for (const auto& r : rep.records)
                o.require(r.pass && r.exact && r.residual == 0.0, "Vec(Z/" + std::to_string(n) + ") " + r.name);
        }
        auto sol = oracle::solve_fibonacci_pentagon();
        auto fib = builtin_category("fibonacci");
        o.require(sol.residual < 1e-12, "pentagon oracle did not converge");
        o.require(std::fabs(fib.f(1, 1, 1, 1, 0, 0).complex().real() - sol.p) < 1e-12 &&
                      std::fabs(fib.f(1, 1, 1, 1, 1, 1).complex().real() - sol.s) < 1e-12 &&
                      std::fabs(std::fabs(fib.f(1, 1, 1, 1, 0, 1).complex().real()) - std::fabs(sol.q)) < 1e-12,
                  "Fibonacci F disagrees with the pentagon oracle");
        auto rf = check_special_orbifold_datum(fib, 1e-9);
        o.require(rf.all_pass() && rf.max_residual() <= 1e-9, "Fibonacci fails");
        auto bad = check_special_orbifold_datum(perturb_f(fib, {1, 1, 1, 1, 1, 1}, Scalar::real(1e-3)), 1e-9);
        o.require(!bad.at("pentagon").pass, "perturbation not flagged on the pentagon");
        if (o.pass)
            o.detail = "Vec(Z/2), Vec(Z/3) exact; Fibonacci max residual " + str(rf.max_residual()) +
                       "; perturbed pentagon residual " + str(bad.at("pentagon").residual);
        return o;
    });

    criterion(7, "30-move invariance", 300.0, [] {
        Outcome o;
        std::string info;
        for (auto [name, c, exact] : std::vector<std::tuple<std::string, FusionData, bool>>{
                 {"Vec(Z/3)", builtin_category("vec_zn", {3}), true}, {"Fibonacci", builtin_category("fibonacci"), false}}) {
            auto rep = check_pachner_3d(c, 1e-9);
            o.require(count_prefix(rep, "2-3") == 20 && count_prefix(rep, "1-4") == 10 &&
                          count_prefix(rep, "bubble") == 3,
                      name + ": wrong template counts");
            for (const auto& r : rep.records)
                o.require(r.pass && (!exact || (r.exact && r.residual == 0.0)), name + " " + r.name);
            auto broken = check_pachner_3d(with_phi(c, c.phi + Scalar(1)), 1e-9);
            auto fb = failing_by_kind(broken);
            o.require(fb["2-3"] == 0, name + ": corrupt phi broke a 2-3 move");
            o.require(fb["1-4"] > 0 && fb["bub"] == 3, name + ": corrupt phi not detected");
            info += (info.empty() ? "" : "; ") + name + " 33/33 pass (max " + str(rep.max_residual()) +
                    "), phi+1 fails " + std::to_string(fb["1-4"]) + " 1-4 + " + std::to_string(fb["bub"]) +
                    " bubble, 0 2-3";
        }
        if (o.pass) o.detail = info;
        return o;
    });

    criterion(8, "3-manifold invariants", 300.0, [] {
        Outcome o;
        auto z2 = builtin_category("vec_zn", {2});
        const std::vector<std::pair<std::string, Scalar>> expect = {
            {"sphere3", Scalar::ratio(1, 2)}, {"s2xs1", Scalar(1)}, {"torus3", Scalar(4)}, {"rp3", Scalar(1)}};
        std::string vals;
        for (const auto& [name, want] : expect) {
            auto m = builtin_manifold(name);
            Scalar z = tv_evaluate_closed(m, z2);
            Scalar oracle_value = Scalar::ratio(oracle::z2_hom_count(m), 2);
            o.require(z.identical(want) && z.identical(oracle_value), name + " = " + z.str());
            vals += (vals.empty() ? "" : " ") + name + "=" + z.str();
        }
        std::mt19937_64 rng(8);
        std::set<std::string> forms;
        auto s3 = builtin_manifold("sphere3");
        forms.insert(canonical_form(s3));
        auto fib = builtin_category("fibonacci");
        const Scalar ref = tv_evaluate_closed(s3, fib);
        while (forms.size() < 4) {
            auto t = random_walk(s3, 6, rng);
            if (!forms.insert(canonical_form(t)).second) continue;
            o.require(tv_evaluate_closed(t, z2).identical(Scalar::ratio(1, 2)), "Z/2 changed under moves");
            o.require(distance(tv_evaluate_closed(t, fib), ref) <= 1e-9, "Fibonacci changed under moves");
        }
        if (o.pass) o.detail = vals + "; 3 further S3 triangulations agree";
        return o;
    });

    criterion(9, "Euler calculus", 10.0, [] {
        Outcome o;
        std::mt19937_64 rng(20261014);
        EulerWeights w{{{1, Scalar(3)}, {2, Scalar::parse("3/2")}}};
        auto total = [](const Triangulation& t) { return euler_characteristics(t).at(0).chi_tilde; };
        auto z = [&](const Triangulation& t) { return z_euler_evaluate(StratifiedComplex::trivial(t), w); };
        int done = 0, glued = 0;
        for (int attempts = 0; done < 100 && attempts < 5000; ++attempts) {
            auto s = builtin_manifold("surface_genus", {static_cast<int>(rng() % 4)});
            auto region = support::random_region(s, rng);
            std::vector<char> in(s.num_simplices(), 0);
            for (int i : region) in[i] = 1;
            std::vector<int> rest;
            for (int i = 0; i < s.num_simplices(); ++i)
                if (!in[i]) rest.push_back(i);
            if (rest.empty()) continue;
            try {
                auto a = subcomplex(s, region), b = subcomplex(s, rest);
                o.require(total(a) + total(b) == total(s), "chi~ not additive");
                o.require((z(a) * z(b)).identical(z(s)), "Z not multiplicative");
                if (a.boundary().size() == 1) {
                    auto g = glue_along_boundary(a, b, "b0", "b0");
                    o.require(total(g) == total(s) && z(g).identical(z(a) * z(b)), "glued value differs");
                    ++glued;
                }
                ++done;
            } catch (const Error& e) {
                if (e.code() != "NonManifold" && e.code() != "DisconnectedStratum") throw;
            }
        }
        o.require(done == 100, "only " + std::to_string(done) + " splits");
        // Composition of bordisms and the cylinder.
        auto cyl = builtin_manifold("annulus", {3});
        auto disk = builtin_manifold("disk", {3});
        o.require(z(cyl).is_one(), "cylinder value != 1");
        auto cc = glue_along_boundary(cyl, cyl, "out", "in");
        o.require(z(cc).is_one(), "composed cylinder != 1");
        auto capped = glue_along_boundary(disk, rename_boundary(cyl, {{"in", "in0"}}), "out", "in0");
        o.require(z(capped).identical(z(disk) * z(cyl)), "disk composed with cylinder");
        // Point removal on a disk (E_2 = chi(S^1) - 1) and a solid ball (E_3 = chi(S^2) - 1).
        auto d = builtin_manifold("disk", {4});
        StratifiedComplex pd(d, {StratumSpec{2, "D", d.simplices()}, StratumSpec{0, "p", {{0}}}});
        o.require(euler_characteristics(pd)[0].chi_tilde == total(d) + 2 * (0 - 1), "punctured disk");
        auto ball = builtin_manifold("ball3");
        auto coned = apply_pachner_move(ball, enumerate_oriented_moves(ball, MoveKind::M14)[0]);
        StratifiedComplex pb(coned, {StratumSpec{3, "B", coned.simplices()}, StratumSpec{0, "p", {{coned.max_vertex_id()}}}});
        o.require(euler_characteristics(pb)[0].chi_tilde == total(coned) + 2 * (2 - 1), "punctured ball");
        if (o.pass)
            o.detail = "100 random splits additive (" + std::to_string(glued) +
                       " reglued), cylinder 1, composition multiplicative, point removal on disk and ball";
        return o;
    });

    std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
