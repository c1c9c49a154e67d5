#include "orb/fusion.hpp"

#include <cmath>

#include "orb/error.hpp"
#include "orb/linalg.hpp"
#include "orb/mesh.hpp"
#include "orb/statesum3d.hpp"

namespace orb {

bool FusionData::is_exact() const {
    for (const auto& x : F)
        if (!x.is_exact()) return false;
    for (const auto& x : Fbar)
        if (!x.is_exact()) return false;
    for (const auto& x : d)
        if (!x.is_exact()) return false;
    return phi.is_exact();
}

FusionData empty_fusion_data(int n) {
    if (n < 1 || n > 16) fail("BadParams", "label count must be in 1..16");
    FusionData c;
    c.n = n;
    for (int a = 0; a < n; ++a) c.labels.push_back(std::to_string(a));
    c.dual.assign(n, 0);
    c.fusion.assign(static_cast<size_t>(n) * n * n, 0);
    const size_t n6 = FusionData::index6(n - 1, n - 1, n - 1, n - 1, n - 1, n - 1, n) + 1;
    c.F.assign(n6, Scalar(0));
    c.Fbar.assign(n6, Scalar(0));
    c.d.assign(n, Scalar(1));
    c.phi = Scalar(n);
    return c;
}

Scalar psi(const FusionData& c, int a) { return sqrt(c.d.at(a)); }

namespace {

struct Block {
    std::vector<int> es, fs;
};

Block block_of(const FusionData& c, int a, int b, int x, int dd) {
    Block k;
    for (int e = 0; e < c.n; ++e)
        if (c.N(a, b, e) && c.N(e, x, dd)) k.es.push_back(e);
    for (int f = 0; f < c.n; ++f)
        if (c.N(b, x, f) && c.N(a, f, dd)) k.fs.push_back(f);
    return k;
}

bool shapes_ok(const FusionData& c) {
    const size_t n = c.n;
    const size_t n6 = n * n * n * n * n * n;
    return c.n >= 1 && c.labels.size() == n && c.dual.size() == n && c.fusion.size() == n * n * n &&
           c.F.size() == n6 && c.Fbar.size() == n6 && c.d.size() == n && c.unit >= 0 && c.unit < c.n;
}

}  // namespace

Report validate_fusion_data(const FusionData& c, double tol) {
    Report rep;
    CheckRecord shapes{"shapes", shapes_ok(c), 0.0, true, {}, ""};
    if (!shapes.pass) shapes.note = "array sizes do not match the label count";
    rep.records.push_back(shapes);
    if (!shapes.pass) return rep;
    const int n = c.n;
    {
        Residual r("unit");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                r.add(Scalar(c.N(c.unit, a, b)), Scalar(a == b), {a, b});
                r.add(Scalar(c.N(a, c.unit, b)), Scalar(a == b), {a, b});
            }
        rep.records.push_back(r.finish(tol));
    }
    {
        Residual r("duals");
        for (int a = 0; a < n; ++a) {
            const int ad = c.dual[a];
            if (ad < 0 || ad >= n) {
                r.add(Scalar(1), Scalar(0), {a});
                continue;
            }
            r.add(Scalar(c.dual[ad]), Scalar(a), {a});
            for (int b = 0; b < n; ++b) r.add(Scalar(c.N(a, b, c.unit)), Scalar(b == ad), {a, b});
        }
        rep.records.push_back(r.finish(tol));
    }
    {
        Residual r("associativity");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int x = 0; x < n; ++x)
                    for (int dd = 0; dd < n; ++dd) {
                        int lhs = 0, rhs = 0;
                        for (int e = 0; e < n; ++e) lhs += c.N(a, b, e) * c.N(e, x, dd);
                        for (int f = 0; f < n; ++f) rhs += c.N(b, x, f) * c.N(a, f, dd);
                        r.add(Scalar(lhs), Scalar(rhs), {a, b, x, dd});
                    }
        for (int v : c.fusion)
            if (v != 0 && v != 1) r.add(Scalar(v), Scalar(1), {});
        rep.records.push_back(r.finish(tol));
    }
    {
        Residual r("support");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int x = 0; x < n; ++x)
                    for (int dd = 0; dd < n; ++dd)
                        for (int e = 0; e < n; ++e)
                            for (int f = 0; f < n; ++f) {
                                if (c.admissible(a, b, x, dd, e, f)) continue;
                                r.add(c.f(a, b, x, dd, e, f), Scalar(0), {a, b, x, dd, e, f});
                                r.add(c.fbar(a, b, x, dd, e, f), Scalar(0), {a, b, x, dd, e, f});
                            }
        rep.records.push_back(r.finish(tol));
    }
    {
        Residual r("inverse");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int x = 0; x < n; ++x)
                    for (int dd = 0; dd < n; ++dd) {
                        auto k = block_of(c, a, b, x, dd);
                        if (k.es.size() != k.fs.size()) {
                            r.add(Scalar(static_cast<int>(k.es.size())), Scalar(static_cast<int>(k.fs.size())),
                                  {a, b, x, dd});
                            continue;
                        }
                        for (int e : k.es)
                            for (int e2 : k.es) {
                                Scalar s;
                                for (int f : k.fs) s += c.f(a, b, x, dd, e, f) * c.fbar(a, b, x, dd, e2, f);
                                r.add(s, Scalar(e == e2), {a, b, x, dd, e, e2});
                            }
                        for (int f : k.fs)
                            for (int f2 : k.fs) {
                                Scalar s;
                                for (int e : k.es) s += c.fbar(a, b, x, dd, e, f) * c.f(a, b, x, dd, e, f2);
                                r.add(s, Scalar(f == f2), {a, b, x, dd, f, f2});
                            }
                    }
        rep.records.push_back(r.finish(tol));
    }
    {
        CheckRecord w{"invertible_weights", true, 0.0, true, {}, ""};
        for (int a = 0; a < n; ++a)
            if (c.d[a].abs() <= (c.d[a].is_exact() ? 0.0 : tol)) {
                w.pass = false;
                w.witness = {a};
                w.note = "d of label " + c.labels[a] + " vanishes";
            }
        if (c.phi.abs() <= (c.phi.is_exact() ? 0.0 : tol)) {
            w.pass = false;
            w.note = "phi vanishes";
        }
        rep.records.push_back(w);
    }
    return rep;
}

void recompute_fbar(FusionData& c, double tol) {
    const int n = c.n;
    std::fill(c.Fbar.begin(), c.Fbar.end(), Scalar(0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int x = 0; x < n; ++x)
                for (int dd = 0; dd < n; ++dd) {
                    auto k = block_of(c, a, b, x, dd);
                    if (k.es.empty() && k.fs.empty()) continue;
                    if (k.es.size() != k.fs.size()) fail("Singular", "F block is not square");
                    const int m = static_cast<int>(k.es.size());
                    Matrix blk(m, m);
                    for (int i = 0; i < m; ++i)
                        for (int j = 0; j < m; ++j) blk(i, j) = c.f(a, b, x, dd, k.es[i], k.fs[j]);
                    Matrix inv = inverse(blk, tol);
                    for (int i = 0; i < m; ++i)
                        for (int j = 0; j < m; ++j) c.fbar_ref(a, b, x, dd, k.es[i], k.fs[j]) = inv(j, i);
                }
}

Report check_special_orbifold_datum(const FusionData& c, double tol) {
    auto v = validate_fusion_data(c, tol);
    if (!v.all_pass()) {
        std::string bad;
        for (const auto& r : v.records)
            if (!r.pass) bad += (bad.empty() ? "" : ", ") + r.name;
        fail("InvalidFusionData", "fusion data fails: " + bad);
    }
    Report rep;
    {
        // The 2-3 move in which every tetrahedron is positive: two halves of
        // the boundary of the standard 4-simplex.
        std::map<Vid, Rational> h;
        for (int i = 0; i < 5; ++i) h[i] = Rational(i);
        auto two = build_triangulation(3, h, {{0, 2, 3, 4}, {0, 1, 2, 4}}, {1, 1});
        auto three = build_triangulation(3, h, {{1, 2, 3, 4}, {0, 1, 3, 4}, {0, 1, 2, 3}}, {1, 1, 1});
        auto lhs = evaluate_ball_tensor(two, c), rhs = evaluate_ball_tensor(three, c);
        if (lhs.boundary_edges != rhs.boundary_edges) fail("Internal", "pentagon balls disagree on the boundary");
        rep.records.push_back(compare_tensors("pentagon", lhs.values, rhs.values, tol));
    }
    int k = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            auto [lhs, rhs] = lens_move(i, j);
            auto rec = compare_tensors("lens_" + std::to_string(++k), evaluate_complex(lhs, c),
                                       evaluate_complex(rhs, c), tol);
            rec.note = "doubled edge " + std::to_string(i) + "-" + std::to_string(j) +
                       (rec.note.empty() ? "" : "; " + rec.note);
            rep.records.push_back(rec);
        }
    for (int b = 0; b < 3; ++b) {
        auto [lhs, rhs] = bubble_move(b);
        rep.records.push_back(compare_tensors("bubble_" + std::to_string(b + 1), evaluate_complex(lhs, c),
                                              evaluate_complex(rhs, c), tol));
    }
    return rep;
}

std::vector<std::string> builtin_category_names() { return {"trivial", "vec_zn", "fibonacci"}; }

FusionData builtin_category(const std::string& name, const std::vector<int>& params, Mode mode) {
    auto need = [&](size_t k) {
        if (params.size() != k)
            fail("BadParams", name + " takes " + std::to_string(k) + " parameter(s)");
    };
    if (name == "trivial" || name == "vec_zn") {
        int n = 1;
        if (name == "vec_zn") {
            need(1);
            n = params[0];
            if (n < 1 || n > 16) fail("BadParams", "vec_zn needs 1 <= N <= 16");
        } else {
            need(0);
        }
        FusionData c = empty_fusion_data(n);
        for (int a = 0; a < n; ++a) {
            c.dual[a] = (n - a) % n;
            for (int b = 0; b < n; ++b) c.N_ref(a, b, (a + b) % n) = 1;
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int x = 0; x < n; ++x) {
                    const int e = (a + b) % n, f = (b + x) % n, dd = (a + b + x) % n;
                    c.f_ref(a, b, x, dd, e, f) = Scalar(1);
                    c.fbar_ref(a, b, x, dd, e, f) = Scalar(1);
                }
        return to_mode(c, mode);
    }
    if (name == "fibonacci") {
        need(0);
        FusionData c = empty_fusion_data(2);
        c.labels = {"1", "tau"};
        c.dual = {0, 1};
        c.N_ref(0, 0, 0) = 1;
        c.N_ref(0, 1, 1) = c.N_ref(1, 0, 1) = 1;
        c.N_ref(1, 1, 0) = c.N_ref(1, 1, 1) = 1;
        const double g = (1.0 + std::sqrt(5.0)) / 2.0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int x = 0; x < 2; ++x)
                    for (int dd = 0; dd < 2; ++dd)
                        for (int e = 0; e < 2; ++e)
                            for (int f = 0; f < 2; ++f)
                                if (c.admissible(a, b, x, dd, e, f)) c.f_ref(a, b, x, dd, e, f) = Scalar::real(1.0);
        // The only nontrivial block, F^{tau tau tau}_tau over e, f in {1, tau}.
        c.f_ref(1, 1, 1, 1, 0, 0) = Scalar::real(1.0 / g);
        c.f_ref(1, 1, 1, 1, 0, 1) = Scalar::real(1.0 / std::sqrt(g));
        c.f_ref(1, 1, 1, 1, 1, 0) = Scalar::real(1.0 / std::sqrt(g));
        c.f_ref(1, 1, 1, 1, 1, 1) = Scalar::real(-1.0 / g);
        c.d = {Scalar::real(1.0), Scalar::real(g)};
        c.phi = Scalar::real(1.0 + g * g);
        recompute_fbar(c);
        return c;
    }
    fail("UnknownName", "unknown category '" + name + "'");
}

FusionData gauge_transform(const FusionData& c, const std::function<Scalar(int, int, int)>& u) {
    FusionData g = c;
    const int n = c.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int x = 0; x < n; ++x)
                for (int dd = 0; dd < n; ++dd)
                    for (int e = 0; e < n; ++e)
                        for (int f = 0; f < n; ++f) {
                            if (!c.admissible(a, b, x, dd, e, f)) continue;
                            Scalar w = u(a, b, e) * u(e, x, dd) / (u(b, x, f) * u(a, f, dd));
                            g.f_ref(a, b, x, dd, e, f) = c.f(a, b, x, dd, e, f) * w;
                            g.fbar_ref(a, b, x, dd, e, f) = c.fbar(a, b, x, dd, e, f) / w;
                        }
    return g;
}

FusionData perturb_f(const FusionData& c, const std::array<int, 6>& i, const Scalar& delta) {
    FusionData p = c;
    if (!c.admissible(i[0], i[1], i[2], i[3], i[4], i[5])) fail("BadParams", "entry is not admissible");
    p.f_ref(i[0], i[1], i[2], i[3], i[4], i[5]) += delta;
    recompute_fbar(p);
    return p;
}

FusionData with_phi(const FusionData& c, const Scalar& phi) {
    FusionData p = c;
    p.phi = phi;
    return p;
}

FusionData to_mode(const FusionData& c, Mode mode) {
    FusionData p = c;
    for (auto& x : p.F) x = x.in_mode(mode);
    for (auto& x : p.Fbar) x = x.in_mode(mode);
    for (auto& x : p.d) x = x.in_mode(mode);
    p.phi = p.phi.in_mode(mode);
    return p;
}

}  // namespace orb
