#include "orb/statesum3d.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <set>

#include "orb/contract.hpp"
#include "orb/error.hpp"

namespace orb {

namespace {

int find_root(std::vector<int>& p, int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
}

// Tetrahedron weights for both signs, indexed like F.
struct TetTables {
    std::vector<Scalar> plus, minus;
};

TetTables tet_tables(const FusionData& c) {
    const int n = c.n;
    std::vector<Scalar> inv_psi(n);
    for (int a = 0; a < n; ++a) inv_psi[a] = Scalar(1) / psi(c, a);
    TetTables t{std::vector<Scalar>(c.F.size()), std::vector<Scalar>(c.F.size())};
    for (size_t i = 0; i < c.F.size(); ++i) {
        if (c.F[i].is_zero() && c.Fbar[i].is_zero()) continue;
        const int f = static_cast<int>(i % n), e = static_cast<int>((i / n) % n);
        const Scalar w = inv_psi[e] * inv_psi[f];
        t.plus[i] = c.F[i] * w;
        t.minus[i] = c.Fbar[i] * w;
    }
    return t;
}

}  // namespace

LabelTensor evaluate_complex(const TetComplex& x, const FusionData& c) {
    const int n = c.n;
    auto check_edge = [&](int e) {
        if (e < 0 || e >= x.num_edges) fail("BadComplex", "reference to an unknown edge");
    };
    if (static_cast<int>(x.psi_power.size()) != x.num_edges) fail("BadComplex", "one psi power per edge");
    for (const auto& t : x.tets) {
        for (int e : t.edge) check_edge(e);
        if (t.sign != 1 && t.sign != -1) fail("BadComplex", "tetrahedron sign must be +1 or -1");
    }
    for (const auto& f : x.faces)
        for (int e : f) check_edge(e);
    for (const auto& [a, b] : x.equal) {
        check_edge(a);
        check_edge(b);
    }
    for (int e : x.free_edges) check_edge(e);

    // psi^p per label for the exponents in use.
    std::map<int, std::vector<Scalar>> weight;
    for (int p : x.psi_power) {
        if (weight.count(p)) continue;
        std::vector<Scalar> w(n);
        for (int a = 0; a < n; ++a) {
            Scalar s = psi(c, a);
            w[a] = p >= 0 ? s.pow(p) : (Scalar(1) / s).pow(-p);
        }
        weight.emplace(p, std::move(w));
    }

    auto tables = std::make_shared<TetTables>(tet_tables(c));
    SumProduct sp;
    for (int e = 0; e < x.num_edges; ++e) sp.add_variable(n);
    for (int e = 0; e < x.num_edges; ++e) {
        if (x.psi_power[e] == 0) continue;
        const std::vector<Scalar>* w = &weight.at(x.psi_power[e]);
        sp.add_factor({e}, [w](const int* l) { return (*w)[l[0]]; });
    }
    for (const auto& f : x.faces)
        sp.add_constraint({f[0], f[1], f[2]}, [&c](const int* l) { return c.N(l[0], l[1], l[2]) == 1; });
    for (const auto& [a, b] : x.equal)
        sp.add_constraint({a, b}, [](const int* l) { return l[0] == l[1]; });
    for (const auto& t : x.tets) {
        const std::vector<Scalar>* table = t.sign > 0 ? &tables->plus : &tables->minus;
        std::vector<int> scope(t.edge.begin(), t.edge.end());
        sp.add_factor(scope, [table, n, tables](const int* l) {
            return (*table)[FusionData::index6(l[0], l[1], l[2], l[3], l[4], l[5], n)];
        });
    }
    sp.set_outputs(x.free_edges);
    Scalar scale = c.phi.pow(-x.interior_vertices);
    if (!c.is_exact()) scale = scale.to_float();
    sp.set_scale(scale);
    return sp.evaluate();
}

CheckRecord compare_tensors(const std::string& name, const LabelTensor& lhs, const LabelTensor& rhs, double tol) {
    Residual r(name);
    for (const auto& [k, v] : lhs) {
        auto it = rhs.find(k);
        r.add(v, it == rhs.end() ? Scalar(0) : it->second, k);
    }
    for (const auto& [k, v] : rhs)
        if (!lhs.count(k)) r.add(Scalar(0), v, k);
    if (lhs.empty() && rhs.empty()) r.add(Scalar(0), Scalar(0), {});
    return r.finish(tol);
}

TetComplex ball_complex(const Triangulation& b) {
    if (b.dim() != 3) fail("BadDimension", "a 3-ball is needed");
    if (b.is_closed()) fail("NotABall", "triangulation has no boundary");
    auto bd = b.all_boundary_facets();
    // The boundary must be one 2-sphere and the interior contractible enough
    // for chi = 1 (the manifold checks have already been made).
    std::set<Vid> bv;
    std::set<Simplex> be;
    for (const auto& f : bd) {
        for (Vid v : f) bv.insert(v);
        be.insert({f[0], f[1]});
        be.insert({f[1], f[2]});
        be.insert({f[0], f[2]});
    }
    std::map<Simplex, int> edge_tri;
    std::vector<int> parent(bd.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (size_t i = 0; i < bd.size(); ++i) {
        const auto& f = bd[i];
        for (Simplex e : {Simplex{f[0], f[1]}, Simplex{f[1], f[2]}, Simplex{f[0], f[2]}}) {
            auto [it, fresh] = edge_tri.emplace(e, static_cast<int>(i));
            if (!fresh) parent[find_root(parent, static_cast<int>(i))] = find_root(parent, it->second);
        }
    }
    int roots = 0;
    for (size_t i = 0; i < bd.size(); ++i) roots += find_root(parent, static_cast<int>(i)) == static_cast<int>(i);
    const long chi_bd = static_cast<long>(bv.size()) - static_cast<long>(be.size()) + static_cast<long>(bd.size());
    if (roots != 1 || chi_bd != 2 || b.euler_characteristic() != 1)
        fail("NotABall", "boundary is not a single 2-sphere");

    TetComplex x;
    std::map<Simplex, int> id;
    for (const auto& e : b.faces(1)) id[e] = x.add_edge(be.count(e) ? 1 : 2);
    for (const auto& e : b.faces(1))
        if (be.count(e)) x.free_edges.push_back(id[e]);
    for (const auto& f : b.faces(2)) x.faces.push_back({id.at({f[0], f[1]}), id.at({f[1], f[2]}), id.at({f[0], f[2]})});
    for (int i = 0; i < b.num_simplices(); ++i) {
        const auto& s = b.simplices()[i];
        TetComplex::Tet t;
        t.edge = {id.at({s[0], s[1]}), id.at({s[1], s[2]}), id.at({s[2], s[3]}),
                  id.at({s[0], s[3]}), id.at({s[0], s[2]}), id.at({s[1], s[3]})};
        t.sign = b.signs()[i];
        x.tets.push_back(t);
    }
    x.interior_vertices = b.num_vertices() - static_cast<int>(bv.size());
    return x;
}

BallTensor evaluate_ball_tensor(const Triangulation& b, const FusionData& c) {
    TetComplex x = ball_complex(b);
    BallTensor t;
    const auto edges = b.faces(1);
    for (int e : x.free_edges) t.boundary_edges.push_back(edges[e]);
    t.values = evaluate_complex(x, c);
    return t;
}

Scalar tv_evaluate_closed(const Triangulation& m, const FusionData& c, double tol) {
    if (m.dim() != 3) fail("BadDimension", "a 3-manifold is needed");
    if (!m.is_closed()) fail("NotClosed", "manifold has boundary");
    Report rep;
    try {
        rep = check_special_orbifold_datum(c, tol);
    } catch (const Error& e) {
        fail("InvalidDatum", e.what());
    }
    if (!rep.all_pass()) {
        std::string bad;
        for (const auto& r : rep.records)
            if (!r.pass) bad += (bad.empty() ? "" : ", ") + r.name;
        fail("InvalidDatum", "constraints fail: " + bad);
    }
    TetComplex x;
    std::map<Simplex, int> id;
    for (const auto& e : m.faces(1)) id[e] = x.add_edge(2);
    for (const auto& f : m.faces(2)) x.faces.push_back({id.at({f[0], f[1]}), id.at({f[1], f[2]}), id.at({f[0], f[2]})});
    for (int i = 0; i < m.num_simplices(); ++i) {
        const auto& s = m.simplices()[i];
        TetComplex::Tet t;
        t.edge = {id.at({s[0], s[1]}), id.at({s[1], s[2]}), id.at({s[2], s[3]}),
                  id.at({s[0], s[3]}), id.at({s[0], s[2]}), id.at({s[1], s[3]})};
        t.sign = m.signs()[i];
        x.tets.push_back(t);
    }
    x.interior_vertices = m.num_vertices();
    auto v = evaluate_complex(x, c);
    return v.empty() ? (c.is_exact() ? Scalar(0) : Scalar(0).to_float()) : v.begin()->second;
}

std::pair<TetComplex, TetComplex> lens_move(int i, int j) {
    if (i < 0 || j > 3 || i >= j) fail("BadParams", "lens move needs ranks 0 <= i < j <= 3");
    int k = -1, l = -1;
    for (int r = 0; r < 4; ++r)
        if (r != i && r != j) (k < 0 ? k : l) = r;
    auto pair_index = [](int p, int q) {
        static const int idx[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
        return idx[p][q];
    };
    auto wire = [&](const std::array<int, 6>& ids) {
        // edges in the order 01, 02, 03, 12, 13, 23 mapped to tetrahedron slots
        return std::array<int, 6>{ids[0], ids[3], ids[5], ids[2], ids[1], ids[4]};
    };
    const int doubled = pair_index(i, j), inner = pair_index(k, l);

    TetComplex lhs;
    std::array<int, 6> e1{};
    for (int p = 0; p < 6; ++p) e1[p] = lhs.add_edge(p == inner ? 2 : 1);
    const int copy = lhs.add_edge(1);
    std::array<int, 6> e2 = e1;
    e2[doubled] = copy;
    lhs.tets.push_back({wire(e1), 1});
    lhs.tets.push_back({wire(e2), -1});
    for (int p = 0; p < 6; ++p)
        if (p != inner) lhs.free_edges.push_back(e1[p]);
    lhs.free_edges.push_back(copy);

    // The two unshared faces, each seen from both sides, collapse onto one.
    TetComplex rhs;
    std::array<int, 6> r1{};
    for (int p = 0; p < 6; ++p) r1[p] = p == inner ? -1 : rhs.add_edge(p == doubled ? 0 : 1);
    const int rcopy = rhs.add_edge(0);
    rhs.equal.push_back({r1[doubled], rcopy});
    for (int other : {k, l}) {
        int v[3] = {i, j, other};
        std::sort(v, v + 3);
        rhs.faces.push_back({r1[pair_index(v[0], v[1])], r1[pair_index(v[1], v[2])], r1[pair_index(v[0], v[2])]});
    }
    for (int p = 0; p < 6; ++p)
        if (p != inner) rhs.free_edges.push_back(r1[p]);
    rhs.free_edges.push_back(rcopy);
    return {lhs, rhs};
}

std::pair<TetComplex, TetComplex> bubble_move(int variant) {
    if (variant < 0 || variant > 2) fail("BadParams", "bubble variant must be 0, 1 or 2");
    // Outer 3-strata w1 < w2 separated by the sheet a; the bubble's inner
    // 3-stratum v meets w1 through hemisphere x and w2 through hemisphere y.
    // The sheet, punctured by the bubble, has chi~ = 0.
    TetComplex lhs;
    const int a = lhs.add_edge(0), x = lhs.add_edge(2), y = lhs.add_edge(2);
    if (variant == 0) lhs.faces.push_back({x, a, y});       // v < w1 < w2
    else if (variant == 1) lhs.faces.push_back({x, y, a});  // w1 < v < w2
    else lhs.faces.push_back({a, y, x});                    // w1 < w2 < v
    lhs.interior_vertices = 1;
    lhs.free_edges = {a};
    TetComplex rhs;
    rhs.free_edges = {rhs.add_edge(2)};
    return {lhs, rhs};
}

Report check_pachner_3d(const FusionData& c, double tol) {
    auto v = validate_fusion_data(c, tol);
    if (!v.all_pass()) fail("InvalidDatum", "fusion data fails validation");
    Report rep;
    for (MoveKind kind : {MoveKind::M23, MoveKind::M14})
        for (const auto& [key, r] : oriented_move_representatives(kind)) {
            const Triangulation& ball = r.first;
            Triangulation after = apply_pachner_move(ball, r.second);
            auto lhs = evaluate_ball_tensor(ball, c), rhs = evaluate_ball_tensor(after, c);
            if (lhs.boundary_edges != rhs.boundary_edges) fail("Internal", "move changed the boundary of " + key);
            rep.records.push_back(compare_tensors(key, lhs.values, rhs.values, tol));
        }
    for (int b = 0; b < 3; ++b) {
        auto [lhs, rhs] = bubble_move(b);
        rep.records.push_back(
            compare_tensors("bubble_" + std::to_string(b + 1), evaluate_complex(lhs, c), evaluate_complex(rhs, c), tol));
    }
    return rep;
}

}  // namespace orb
