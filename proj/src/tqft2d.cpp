#include "orb/tqft2d.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "orb/contract.hpp"
#include "orb/error.hpp"

namespace orb {

namespace {

int find_root(std::vector<int>& p, int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
}

// Triangle tensors with some sides raised by the inverse pairing, indexed
// by the 3-bit mask of raised sides.
struct TriangleTensors {
    int n;
    std::array<std::vector<Scalar>, 8> c;

    TriangleTensors(const FrobeniusData& a, const Matrix& ginv) : n(a.dim) {
        const size_t n3 = static_cast<size_t>(n) * n * n;
        std::vector<Scalar> base(n3);
        // C_xyz = eps((e_x e_y) e_z)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int k = 0; k < n; ++k) {
                    if (a.m(x, y, k).is_zero()) continue;
                    for (int z = 0; z < n; ++z)
                        for (int l = 0; l < n; ++l)
                            if (!a.m(k, z, l).is_zero() && !a.eps[l].is_zero())
                                base[(static_cast<size_t>(x) * n + y) * n + z] += a.m(x, y, k) * a.m(k, z, l) * a.eps[l];
                }
        for (int mask = 0; mask < 8; ++mask) {
            std::vector<Scalar> t = base;
            for (int side = 0; side < 3; ++side) {
                if (!(mask & (1 << side))) continue;
                std::vector<Scalar> u(n3);
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y)
                        for (int z = 0; z < n; ++z) {
                            int idx[3] = {x, y, z};
                            Scalar acc;
                            for (int k = 0; k < n; ++k) {
                                if (ginv(idx[side], k).is_zero()) continue;
                                int j[3] = {x, y, z};
                                j[side] = k;
                                const Scalar& v = t[(static_cast<size_t>(j[0]) * n + j[1]) * n + j[2]];
                                if (!v.is_zero()) acc += ginv(idx[side], k) * v;
                            }
                            u[(static_cast<size_t>(x) * n + y) * n + z] = acc;
                        }
                t = std::move(u);
            }
            c[mask] = std::move(t);
        }
    }
};

using Tensor = std::map<std::vector<int>, Scalar>;

// Contracts the network; keys are labels of out_edges followed by in_edges.
Tensor network_tensor(const Network2D& net, const FrobeniusData& a, Normalization norm) {
    std::vector<int> uses(net.num_edges, 0), fwd(net.num_edges, 0);
    for (const auto& t : net.triangles)
        for (const auto& s : t) {
            if (s.edge < 0 || s.edge >= net.num_edges) fail("BadNetwork", "side refers to an unknown edge");
            ++uses[s.edge];
            fwd[s.edge] += s.fwd;
        }
    std::vector<int> role(net.num_edges, 0);  // 1 out, 2 in
    for (int e : net.out_edges) {
        if (e < 0 || e >= net.num_edges || role[e]) fail("BadNetwork", "bad or repeated out edge");
        role[e] = 1;
    }
    for (int e : net.in_edges) {
        if (e < 0 || e >= net.num_edges || role[e]) fail("BadNetwork", "bad or repeated in edge");
        role[e] = 2;
    }
    for (int e = 0; e < net.num_edges; ++e) {
        if (uses[e] == 2 && fwd[e] != 1) fail("BadNetwork", "interior edge must be traversed once each way");
        if (uses[e] > 2) fail("BadNetwork", "edge in more than two sides");
        if (uses[e] == 1 && !role[e]) fail("BadNetwork", "boundary edge without a free index");
        if (uses[e] != 1 && role[e]) fail("BadNetwork", "free index on an interior edge");
    }

    Matrix ginv = inverse_pairing(a);
    TriangleTensors tt(a, ginv);
    const int n = a.dim;
    SumProduct sp;
    std::vector<int> var(net.num_edges, -1);
    for (int e = 0; e < net.num_edges; ++e)
        if (uses[e]) var[e] = sp.add_variable(n);
    for (const auto& t : net.triangles) {
        int mask = 0;
        for (int side = 0; side < 3; ++side) {
            const Side& s = t[side];
            bool raise = (uses[s.edge] == 2 && !s.fwd) || role[s.edge] == 2;
            if (raise) mask |= 1 << side;
        }
        const std::vector<Scalar>* table = &tt.c[mask];
        sp.add_factor({var[t[0].edge], var[t[1].edge], var[t[2].edge]}, [table, n](const int* l) {
            return (*table)[(static_cast<size_t>(l[0]) * n + l[1]) * n + l[2]];
        });
    }
    std::vector<int> outs;
    for (int e : net.out_edges) outs.push_back(var[e]);
    for (int e : net.in_edges) outs.push_back(var[e]);
    sp.set_outputs(outs);
    if (norm == Normalization::Orbifold) {
        Scalar w = Scalar(n).pow(-net.euler_characteristic());
        sp.set_scale(a.is_exact() ? w : w.to_float());
    } else if (!a.is_exact()) {
        sp.set_scale(Scalar(1).to_float());
    }
    return sp.evaluate();
}

SparseMatrix tensor_to_matrix(const Tensor& t, size_t k_out, size_t k_in, int n) {
    long rows = 1, cols = 1;
    for (size_t i = 0; i < k_out; ++i) rows *= n;
    for (size_t i = 0; i < k_in; ++i) cols *= n;
    if (rows * cols > (1L << 34)) fail("TooLarge", "bordism matrix too large");
    SparseMatrix m(static_cast<int>(rows), static_cast<int>(cols));
    for (const auto& [key, v] : t) {
        long r = 0, c = 0;
        for (size_t i = 0; i < k_out; ++i) r = r * n + key[i];
        for (size_t i = 0; i < k_in; ++i) c = c * n + key[k_out + i];
        m.row[r].emplace_back(static_cast<int>(c), v);
    }
    m.normalize();
    return m;
}

void require_valid(const FrobeniusData& a, double tol) {
    auto rep = check_frobenius_axioms(a, tol);
    if (!rep.all_pass()) {
        std::string bad;
        for (const auto& r : rep.records)
            if (!r.pass) bad += (bad.empty() ? "" : ", ") + r.name;
        fail("InvalidDatum", "algebra fails: " + bad);
    }
}

}  // namespace

long Network2D::euler_characteristic() const {
    const int f = static_cast<int>(triangles.size());
    std::vector<int> parent(3 * f);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<int> tail(num_edges, -1), head(num_edges, -1);
    for (int t = 0; t < f; ++t)
        for (int i = 0; i < 3; ++i) {
            const Side& s = triangles[t][i];
            int from = 3 * t + i, to = 3 * t + (i + 1) % 3;
            if (!s.fwd) std::swap(from, to);
            if (tail[s.edge] < 0) {
                tail[s.edge] = from;
                head[s.edge] = to;
            } else {
                parent[find_root(parent, from)] = find_root(parent, tail[s.edge]);
                parent[find_root(parent, to)] = find_root(parent, head[s.edge]);
            }
        }
    long v = 0, e = 0;
    for (int i = 0; i < 3 * f; ++i) v += find_root(parent, i) == i;
    for (int i = 0; i < num_edges; ++i) e += tail[i] >= 0;
    return v - e + f;
}

SparseMatrix evaluate_network(const Network2D& net, const FrobeniusData& a, Normalization norm) {
    return tensor_to_matrix(network_tensor(net, a, norm), net.out_edges.size(), net.in_edges.size(), a.dim);
}

BoundaryCircle boundary_circle(const Triangulation& t, const std::string& name, bool incoming) {
    if (t.dim() != 2) fail("BadDimension", "boundary circles need a surface");
    auto facets = t.oriented_boundary(name);
    std::map<Vid, std::vector<std::pair<Vid, Simplex>>> next;  // along the chosen direction
    for (const auto& [e, s] : facets) {
        Vid from = e[0], to = e[1];
        if (s < 0) std::swap(from, to);
        if (incoming) std::swap(from, to);
        next[from].emplace_back(to, e);
    }
    for (auto& [v, out] : next)
        if (out.size() != 1) fail("BadBoundary", "boundary component '" + name + "' is not a single circle");
    Vid start = next.begin()->first;
    for (auto& [v, out] : next)
        if (t.height(v) < t.height(start)) start = v;
    BoundaryCircle c;
    c.name = name;
    Vid v = start;
    do {
        const auto& step = next.at(v).front();
        c.edges.push_back(step.second);
        v = step.first;
    } while (v != start && c.edges.size() <= facets.size());
    if (c.edges.size() != facets.size())
        fail("BadBoundary", "boundary component '" + name + "' is not a single circle");
    return c;
}

namespace {

// Triangles only, edges numbered in the order of t.faces(1).
Network2D triangle_network(const Triangulation& t, std::map<Simplex, int>& id) {
    Network2D net;
    for (const auto& e : t.faces(1)) id[e] = net.add_edge();
    for (int i = 0; i < t.num_simplices(); ++i) {
        const auto& s = t.simplices()[i];
        const int e01 = id.at({s[0], s[1]}), e12 = id.at({s[1], s[2]}), e02 = id.at({s[0], s[2]});
        if (t.signs()[i] > 0) net.triangles.push_back({Side{e01, true}, Side{e12, true}, Side{e02, false}});
        else net.triangles.push_back({Side{e02, true}, Side{e12, false}, Side{e01, false}});
    }
    return net;
}

}  // namespace

Network2D network_from_triangulation(const Triangulation& t, const std::vector<std::string>& in_names,
                                     const std::vector<std::string>& out_names) {
    if (t.dim() != 2) fail("BadDimension", "2D evaluation needs a surface");
    std::map<Simplex, int> id;
    Network2D net = triangle_network(t, id);
    std::set<std::string> seen;
    for (const auto& nm : in_names) {
        if (!seen.insert(nm).second) fail("BadBoundaryNames", "boundary '" + nm + "' listed twice");
        for (const auto& e : boundary_circle(t, nm, true).edges) net.in_edges.push_back(id.at(e));
    }
    for (const auto& nm : out_names) {
        if (!seen.insert(nm).second) fail("BadBoundaryNames", "boundary '" + nm + "' listed twice");
        for (const auto& e : boundary_circle(t, nm, false).edges) net.out_edges.push_back(id.at(e));
    }
    if (seen.size() != t.boundary().size()) fail("BadBoundaryNames", "every boundary component must be in or out");
    return net;
}

Scalar evaluate_closed_2d(const Triangulation& m, const FrobeniusData& a, Normalization norm, double tol) {
    if (m.dim() != 2) fail("BadDimension", "evaluate_closed_2d needs a surface");
    if (!m.is_closed()) fail("NotClosed", "surface has boundary");
    require_valid(a, tol);
    auto t = network_tensor(network_from_triangulation(m, {}, {}), a, norm);
    return t.empty() ? Scalar(0) : t.begin()->second;
}

SparseMatrix evaluate_bordism_2d(const Triangulation& m, const FrobeniusData& a, std::vector<std::string> in_names,
                                 std::vector<std::string> out_names, Normalization norm, double tol) {
    if (m.dim() != 2) fail("BadDimension", "evaluate_bordism_2d needs a surface");
    if (in_names.empty() && out_names.empty())
        for (const auto& [nm, fs] : m.boundary()) (nm.rfind("in", 0) == 0 ? in_names : out_names).push_back(nm);
    for (const auto& nm : in_names)
        if (!m.boundary().count(nm)) fail("BadBoundaryNames", "no boundary component '" + nm + "'");
    for (const auto& nm : out_names)
        if (!m.boundary().count(nm)) fail("BadBoundaryNames", "no boundary component '" + nm + "'");
    require_valid(a, tol);
    return evaluate_network(network_from_triangulation(m, in_names, out_names), a, norm);
}

Network2D cylinder_network(int k_in, int k_out) {
    if (k_in < 1 || k_out < 1) fail("BadParams", "circles need at least one edge");
    Network2D net;
    for (int i = 0; i < k_in; ++i) net.in_edges.push_back(net.add_edge());
    for (int j = 0; j < k_out; ++j) net.out_edges.push_back(net.add_edge());
    const int steps = k_in + k_out;
    std::vector<int> rung(steps);
    for (auto& r : rung) r = net.add_edge();
    for (int t = 0; t < steps; ++t) {
        const int r0 = rung[t], r1 = rung[(t + 1) % steps];
        if (t < k_in) net.triangles.push_back({Side{net.in_edges[t], true}, Side{r1, true}, Side{r0, false}});
        else net.triangles.push_back({Side{r1, true}, Side{net.out_edges[t - k_in], false}, Side{r0, false}});
    }
    return net;
}

Network2D cup_network(int k) {
    if (k < 1) fail("BadParams", "circles need at least one edge");
    Network2D net;
    for (int j = 0; j < k; ++j) net.out_edges.push_back(net.add_edge());
    std::vector<int> spoke(k);
    for (auto& s : spoke) s = net.add_edge();
    for (int j = 0; j < k; ++j)
        net.triangles.push_back({Side{spoke[(j + 1) % k], true}, Side{net.out_edges[j], false}, Side{spoke[j], false}});
    return net;
}

Network2D cap_network(int k) {
    if (k < 1) fail("BadParams", "circles need at least one edge");
    Network2D net;
    for (int i = 0; i < k; ++i) net.in_edges.push_back(net.add_edge());
    std::vector<int> spoke(k);
    for (auto& s : spoke) s = net.add_edge();
    for (int i = 0; i < k; ++i)
        net.triangles.push_back({Side{net.in_edges[i], true}, Side{spoke[(i + 1) % k], true}, Side{spoke[i], false}});
    return net;
}

Network2D pants_network(int k1, int k2, int k_out) {
    if (k1 < 1 || k2 < 1) fail("BadParams", "circles need at least one edge");
    // An annulus whose inner word is in1 . e . in2 . e', with e' glued back
    // onto e; the inner circle pinches into two.
    Network2D net = cylinder_network(k1 + k2 + 2, k_out);
    const int e = net.in_edges[k1], e2 = net.in_edges[k1 + k2 + 1];
    for (auto& t : net.triangles)
        for (auto& s : t)
            if (s.edge == e2) s = Side{e, !s.fwd};
    std::vector<int> ins;
    for (int i = 0; i < k1 + k2 + 2; ++i)
        if (i != k1 && i != k1 + k2 + 1) ins.push_back(net.in_edges[i]);
    net.in_edges = ins;
    return net;
}

StateSpace orbifold_state_space(int k, const FrobeniusData& a, double tol) {
    if (k < 1) fail("BadParams", "circle size must be at least 1");
    require_valid(a, tol);
    StateSpace s;
    s.circle_size = k;
    s.ambient_dim = 1;
    for (int i = 0; i < k; ++i) s.ambient_dim *= a.dim;
    // The cylinder factors through the one-edge circle; by triangulation
    // independence this is the same operator at a fraction of the cost.
    s.expand = evaluate_network(cylinder_network(1, k), a);
    s.collapse = evaluate_network(cylinder_network(k, 1), a);
    s.projector = s.expand * s.collapse;
    s.basis = select_columns(s.projector, independent_columns(s.projector, tol));
    return s;
}

PointAlgebra point_insertion_algebra(const FrobeniusData& a, double tol) {
    require_valid(a, tol);
    const int n = a.dim;
    Matrix p = evaluate_network(cylinder_network(1, 1), a).to_dense();
    Matrix y = column_basis(p, tol);
    const int r = y.cols;
    Matrix pants = evaluate_network(pants_network(1, 1, 1), a).to_dense();  // n x n^2
    Matrix cup = evaluate_network(cup_network(1), a).to_dense();          // n x 1

    PointAlgebra alg;
    alg.dim = r;
    alg.basis = y;
    alg.structure.assign(static_cast<size_t>(r) * r * r, Scalar(0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Matrix uv(n * n, 1);
            for (int x = 0; x < n; ++x)
                for (int z = 0; z < n; ++z) uv(x * n + z, 0) = y(x, i) * y(z, j);
            Matrix coords = solve(y, pants * uv, tol);
            for (int k = 0; k < r; ++k) alg.structure[(static_cast<size_t>(i) * r + j) * r + k] = coords(k, 0);
        }
    Matrix u = solve(y, cup, tol);
    for (int k = 0; k < r; ++k) alg.unit.push_back(u(k, 0));

    // A state is the boundary value of a disk with one point insertion; its
    // label is obtained by raising the index, rescaled so that the empty
    // insertion (the cup) is labelled by the unit of A.
    Matrix ginv = inverse_pairing(a, tol);
    Matrix raised_cup = ginv * cup;
    int pivot = -1;
    for (int i = 0; i < n && pivot < 0; ++i)
        if (!a.eta[i].is_zero()) pivot = i;
    if (pivot < 0 || raised_cup(pivot, 0).is_zero()) fail("InvalidDatum", "the cup does not represent the unit");
    Scalar scale = a.eta[pivot] / raised_cup(pivot, 0);
    alg.to_algebra = scaled(ginv * y, scale);
    return alg;
}

namespace {

void check_site(const FrobeniusData& a, const Triangulation& ball, const MoveSite& site, const std::string& key,
                std::map<std::string, Residual>& res) {
    Triangulation after = apply_pachner_move(ball, site);
    auto boundary_net = [](const Triangulation& t, const std::vector<Simplex>& bd) {
        std::map<Simplex, int> id;
        Network2D net = triangle_network(t, id);
        for (const auto& e : bd) net.out_edges.push_back(id.at(e));
        return net;
    };
    // Both sides share the boundary; list it in a common order of vertex pairs.
    std::vector<Simplex> bd = ball.all_boundary_facets();
    std::sort(bd.begin(), bd.end());
    Tensor lhs = network_tensor(boundary_net(ball, bd), a, Normalization::StateSum);
    Tensor rhs = network_tensor(boundary_net(after, bd), a, Normalization::StateSum);
    auto [it, fresh] = res.emplace(key, Residual(key));
    Residual& r = it->second;
    for (const auto& [k, v] : lhs) {
        auto jt = rhs.find(k);
        r.add(v, jt == rhs.end() ? Scalar(0) : jt->second, k);
    }
    for (const auto& [k, v] : rhs)
        if (!lhs.count(k)) r.add(Scalar(0), v, k);
    if (lhs.empty() && rhs.empty()) r.add(Scalar(0), Scalar(0), {});
}

}  // namespace

Report check_pachner_2d(const FrobeniusData& a, const Triangulation& base, double tol) {
    if (base.dim() != 2) fail("BadDimension", "check_pachner_2d needs a surface");
    inverse_pairing(a, tol);
    std::map<std::string, Residual> res;
    for (MoveKind kind : {MoveKind::M22, MoveKind::M13, MoveKind::M31})
        for (const auto& site : enumerate_oriented_moves(base, kind)) {
            std::vector<int> idx;
            for (const auto& s : site.simplices) idx.push_back(base.find(s));
            Triangulation ball = subcomplex(base, idx);
            check_site(a, ball, site, move_template_key(base, site), res);
        }
    Report rep;
    for (auto& [k, r] : res) rep.records.push_back(r.finish(tol));
    return rep;
}

Report check_pachner_2d(const FrobeniusData& a, double tol) {
    inverse_pairing(a, tol);
    std::map<std::string, Residual> res;
    for (MoveKind kind : {MoveKind::M22, MoveKind::M13, MoveKind::M31})
        for (const auto& [key, rep] : oriented_move_representatives(kind)) check_site(a, rep.first, rep.second, key, res);
    Report rep;
    for (auto& [k, r] : res) rep.records.push_back(r.finish(tol));
    return rep;
}

}  // namespace orb
