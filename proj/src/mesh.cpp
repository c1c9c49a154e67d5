#include "orb/mesh.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>

#include "orb/error.hpp"

namespace orb {

std::string to_string(MoveKind k) {
    switch (k) {
        case MoveKind::M22: return "2-2";
        case MoveKind::M13: return "1-3";
        case MoveKind::M31: return "3-1";
        case MoveKind::M23: return "2-3";
        case MoveKind::M32: return "3-2";
        case MoveKind::M14: return "1-4";
        case MoveKind::M41: return "4-1";
    }
    return "?";
}

MoveKind parse_move_kind(const std::string& s) {
    for (auto k : {MoveKind::M22, MoveKind::M13, MoveKind::M31, MoveKind::M23, MoveKind::M32, MoveKind::M14,
                   MoveKind::M41})
        if (to_string(k) == s) return k;
    fail("UnknownMoveKind", "unknown move kind '" + s + "'");
}

int move_dimension(MoveKind k) {
    return (k == MoveKind::M22 || k == MoveKind::M13 || k == MoveKind::M31) ? 2 : 3;
}

bool is_expanding(MoveKind k) { return k == MoveKind::M13 || k == MoveKind::M14; }

const Rational& Triangulation::height(Vid v) const {
    auto it = heights_.find(v);
    if (it == heights_.end()) fail("UnknownVertex", "vertex " + std::to_string(v));
    return it->second;
}

Vid Triangulation::max_vertex_id() const { return heights_.empty() ? -1 : heights_.rbegin()->first; }

Simplex Triangulation::sorted(Simplex s) const {
    std::sort(s.begin(), s.end(), [&](Vid x, Vid y) { return height(x) < height(y); });
    return s;
}

int Triangulation::find(const Simplex& s) const {
    for (Vid v : s)
        if (!heights_.count(v)) return -1;
    auto it = index_.find(sorted(s));
    return it == index_.end() ? -1 : it->second;
}

std::vector<Simplex> Triangulation::faces(int k) const {
    std::set<Simplex> out;
    for (const auto& s : simplices_) {
        const int m = static_cast<int>(s.size());
        std::vector<int> pick(m, 0);
        std::fill(pick.begin(), pick.begin() + (k + 1), 1);
        do {
            Simplex f;
            for (int i = 0; i < m; ++i)
                if (pick[i]) f.push_back(s[i]);
            out.insert(f);
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return {out.begin(), out.end()};
}

std::vector<long> Triangulation::f_vector() const {
    std::vector<long> f;
    for (int k = 0; k <= dim_; ++k) f.push_back(static_cast<long>(faces(k).size()));
    return f;
}

long Triangulation::euler_characteristic() const {
    long chi = 0;
    auto f = f_vector();
    for (size_t k = 0; k < f.size(); ++k) chi += (k % 2 == 0 ? 1 : -1) * f[k];
    return chi;
}

namespace {

Simplex drop_at(const Simplex& s, size_t i) {
    Simplex f;
    f.reserve(s.size() - 1);
    for (size_t j = 0; j < s.size(); ++j)
        if (j != i) f.push_back(s[j]);
    return f;
}

struct FacetUse {
    int simplex;
    int omitted;  // rank of the deleted vertex
};

std::map<Simplex, std::vector<FacetUse>> facet_map(const std::vector<Simplex>& simplices) {
    std::map<Simplex, std::vector<FacetUse>> m;
    for (size_t t = 0; t < simplices.size(); ++t)
        for (size_t i = 0; i < simplices[t].size(); ++i)
            m[drop_at(simplices[t], i)].push_back({static_cast<int>(t), static_cast<int>(i)});
    return m;
}

// Checks that `edges` form a single cycle (closed=true) or a single path.
bool cycle_or_path(const std::vector<std::pair<Vid, Vid>>& edges, bool& closed) {
    std::map<Vid, std::vector<Vid>> adj;
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    int ends = 0;
    for (auto& [v, nb] : adj) {
        if (nb.size() > 2) return false;
        if (nb.size() == 1) ++ends;
    }
    if (ends != 0 && ends != 2) return false;
    std::set<Vid> seen;
    std::vector<Vid> stack{adj.begin()->first};
    while (!stack.empty()) {
        Vid v = stack.back();
        stack.pop_back();
        if (!seen.insert(v).second) continue;
        for (Vid w : adj[v]) stack.push_back(w);
    }
    if (seen.size() != adj.size()) return false;
    closed = ends == 0;
    return true;
}

// Returns true when the link is a sphere/disk; `on_boundary` reports which.
bool link_ok(int dim, const std::vector<Simplex>& link, bool& on_boundary) {
    if (dim == 2) {
        std::vector<std::pair<Vid, Vid>> edges;
        for (const auto& e : link) edges.emplace_back(e[0], e[1]);
        bool closed = false;
        if (!cycle_or_path(edges, closed)) return false;
        on_boundary = !closed;
        return true;
    }
    // dim 3: link is a triangulated surface; it must be a 2-sphere or a disk.
    std::map<std::pair<Vid, Vid>, int> edge_count;
    std::map<Vid, std::vector<std::pair<Vid, Vid>>> vertex_link;
    for (const auto& t : link) {
        Simplex s = t;
        std::sort(s.begin(), s.end());
        ++edge_count[{s[0], s[1]}];
        ++edge_count[{s[0], s[2]}];
        ++edge_count[{s[1], s[2]}];
        vertex_link[s[0]].emplace_back(s[1], s[2]);
        vertex_link[s[1]].emplace_back(s[0], s[2]);
        vertex_link[s[2]].emplace_back(s[0], s[1]);
    }
    for (auto& [e, c] : edge_count)
        if (c > 2) return false;
    for (auto& [v, edges] : vertex_link) {
        bool closed = false;
        if (!cycle_or_path(edges, closed)) return false;
    }
    // Connectivity through shared vertices.
    std::map<Vid, std::vector<Vid>> adj;
    for (auto& [e, c] : edge_count) {
        adj[e.first].push_back(e.second);
        adj[e.second].push_back(e.first);
    }
    std::set<Vid> seen;
    std::vector<Vid> stack{adj.begin()->first};
    while (!stack.empty()) {
        Vid v = stack.back();
        stack.pop_back();
        if (!seen.insert(v).second) continue;
        for (Vid w : adj[v]) stack.push_back(w);
    }
    if (seen.size() != adj.size()) return false;
    long chi = static_cast<long>(adj.size()) - static_cast<long>(edge_count.size()) + static_cast<long>(link.size());
    std::vector<std::pair<Vid, Vid>> bd;
    for (auto& [e, c] : edge_count)
        if (c == 1) bd.push_back(e);
    if (bd.empty()) {
        on_boundary = false;
        return chi == 2;
    }
    bool closed = false;
    if (!cycle_or_path(bd, closed) || !closed) return false;
    on_boundary = true;
    return chi == 1;
}

std::string simplex_str(const Simplex& s) {
    std::string r = "(";
    for (size_t i = 0; i < s.size(); ++i) r += (i ? "," : "") + std::to_string(s[i]);
    return r + ")";
}

}  // namespace

std::vector<int> orient_signs(int dim, const std::map<Vid, Rational>& heights, const std::vector<Simplex>& simplices) {
    std::vector<Simplex> sorted = simplices;
    for (auto& s : sorted) {
        for (Vid v : s)
            if (!heights.count(v)) fail("UnknownVertex", "vertex " + std::to_string(v));
        std::sort(s.begin(), s.end(), [&](Vid x, Vid y) { return heights.at(x) < heights.at(y); });
        if (static_cast<int>(s.size()) != dim + 1) fail("BadSimplex", "wrong simplex size " + simplex_str(s));
    }
    auto fm = facet_map(sorted);
    std::vector<std::vector<std::pair<int, int>>> nb(sorted.size());  // (neighbor, parity of i+j)
    for (auto& [f, uses] : fm) {
        if (uses.size() > 2) fail("NonManifold", "facet " + simplex_str(f) + " in more than two simplices");
        if (uses.size() == 2) {
            int par = (uses[0].omitted + uses[1].omitted) % 2;
            nb[uses[0].simplex].emplace_back(uses[1].simplex, par);
            nb[uses[1].simplex].emplace_back(uses[0].simplex, par);
        }
    }
    std::vector<int> sign(sorted.size(), 0);
    for (size_t root = 0; root < sorted.size(); ++root) {
        if (sign[root]) continue;
        sign[root] = 1;
        std::queue<int> q;
        q.push(static_cast<int>(root));
        while (!q.empty()) {
            int s = q.front();
            q.pop();
            for (auto [t, par] : nb[s]) {
                int want = par ? sign[s] : -sign[s];
                if (!sign[t]) {
                    sign[t] = want;
                    q.push(t);
                } else if (sign[t] != want) {
                    fail("NonOrientable", "no consistent orientation exists");
                }
            }
        }
    }
    return sign;
}

Triangulation build_triangulation(int dim, std::map<Vid, Rational> heights, std::vector<Simplex> simplices,
                                  std::vector<int> signs, std::map<std::string, std::vector<Simplex>> boundary) {
    if (dim != 2 && dim != 3) fail("BadDimension", "dimension must be 2 or 3");
    {
        std::set<Rational> seen;
        for (auto& [v, h] : heights)
            if (!seen.insert(h).second) fail("DuplicateHeight", "height " + h.get_str() + " used twice");
    }
    if (signs.size() != simplices.size()) fail("BadSigns", "one orientation sign per simplex required");
    for (int s : signs)
        if (s != 1 && s != -1) fail("BadSigns", "signs must be +1 or -1");

    Triangulation t;
    t.dim_ = dim;
    t.heights_ = std::move(heights);
    std::set<Vid> used;
    for (auto& s : simplices) {
        if (static_cast<int>(s.size()) != dim + 1) fail("BadSimplex", "wrong simplex size " + simplex_str(s));
        s = t.sorted(s);
        for (size_t i = 0; i + 1 < s.size(); ++i)
            if (s[i] == s[i + 1]) fail("NonManifold", "repeated vertex in " + simplex_str(s));
        used.insert(s.begin(), s.end());
    }
    for (auto& [v, h] : t.heights_)
        if (!used.count(v)) fail("DanglingVertex", "vertex " + std::to_string(v) + " is in no simplex");
    t.simplices_ = std::move(simplices);
    t.signs_ = std::move(signs);
    for (size_t i = 0; i < t.simplices_.size(); ++i)
        if (!t.index_.emplace(t.simplices_[i], static_cast<int>(i)).second)
            fail("NonManifold", "duplicate simplex " + simplex_str(t.simplices_[i]));

    auto fm = facet_map(t.simplices_);
    std::vector<Simplex> bfacets;
    std::map<Simplex, int> bsign;
    for (auto& [f, uses] : fm) {
        if (uses.size() > 2) fail("NonManifold", "facet " + simplex_str(f) + " in more than two simplices");
        if (uses.size() == 1) {
            bfacets.push_back(f);
            bsign[f] = induced_face_sign(t.signs_[uses[0].simplex], uses[0].omitted);
            continue;
        }
        int a = induced_face_sign(t.signs_[uses[0].simplex], uses[0].omitted);
        int b = induced_face_sign(t.signs_[uses[1].simplex], uses[1].omitted);
        if (a == b) fail("NonOrientable", "orientation signs disagree across facet " + simplex_str(f));
    }

    // Vertex links.
    std::map<Vid, std::vector<Simplex>> links;
    for (const auto& s : t.simplices_)
        for (size_t i = 0; i < s.size(); ++i) links[s[i]].push_back(drop_at(s, i));
    std::set<Vid> bverts;
    for (const auto& f : bfacets) bverts.insert(f.begin(), f.end());
    for (auto& [v, link] : links) {
        bool on_boundary = false;
        if (!link_ok(dim, link, on_boundary) || on_boundary != (bverts.count(v) > 0))
            fail("NonManifold", "link of vertex " + std::to_string(v) + " is not a sphere or disk");
    }

    // Boundary components.
    if (boundary.empty() && !bfacets.empty()) {
        std::map<Simplex, int> comp;
        std::map<Simplex, std::vector<Simplex>> ridge_to_facets;
        for (const auto& f : bfacets)
            for (size_t i = 0; i < f.size(); ++i) ridge_to_facets[drop_at(f, i)].push_back(f);
        int ncomp = 0;
        for (const auto& f : bfacets) {
            if (comp.count(f)) continue;
            std::vector<Simplex> stack{f};
            comp[f] = ncomp;
            while (!stack.empty()) {
                Simplex g = stack.back();
                stack.pop_back();
                for (size_t i = 0; i < g.size(); ++i)
                    for (const auto& h : ridge_to_facets[drop_at(g, i)])
                        if (!comp.count(h)) {
                            comp[h] = ncomp;
                            stack.push_back(h);
                        }
            }
            ++ncomp;
        }
        // bfacets is lexicographic, so components are numbered by their least facet.
        for (const auto& f : bfacets) boundary["b" + std::to_string(comp[f])].push_back(f);
    }
    std::set<Simplex> covered;
    for (auto& [name, facets] : boundary) {
        if (name.empty()) fail("BadBoundaryMarks", "empty boundary name");
        for (auto& f : facets) {
            for (Vid v : f)
                if (!t.heights_.count(v)) fail("BadBoundaryMarks", "unknown vertex in boundary facet");
            f = t.sorted(f);
            if (!bsign.count(f)) fail("BadBoundaryMarks", simplex_str(f) + " is not a boundary facet");
            if (!covered.insert(f).second) fail("BadBoundaryMarks", simplex_str(f) + " marked twice");
        }
        std::sort(facets.begin(), facets.end());
    }
    if (covered.size() != bfacets.size()) fail("BadBoundaryMarks", "boundary marks do not cover the boundary");
    t.boundary_ = std::move(boundary);
    return t;
}

Triangulation build_oriented(int dim, const std::vector<Simplex>& simplices,
                             std::map<std::string, std::vector<Simplex>> boundary) {
    std::set<Vid> vs;
    for (const auto& s : simplices) vs.insert(s.begin(), s.end());
    std::map<Vid, Rational> h;
    int r = 0;
    for (Vid v : vs) h[v] = Rational(r++);
    auto signs = orient_signs(dim, h, simplices);
    return build_triangulation(dim, h, simplices, signs, std::move(boundary));
}

std::vector<std::pair<Simplex, int>> Triangulation::oriented_boundary(const std::string& name) const {
    auto it = boundary_.find(name);
    if (it == boundary_.end()) fail("BadBoundaryNames", "no boundary component '" + name + "'");
    std::map<Simplex, int> sign;
    for (size_t t = 0; t < simplices_.size(); ++t)
        for (size_t i = 0; i < simplices_[t].size(); ++i) {
            Simplex f = drop_at(simplices_[t], i);
            if (std::binary_search(it->second.begin(), it->second.end(), f))
                sign[f] = induced_face_sign(signs_[t], static_cast<int>(i));
        }
    std::vector<std::pair<Simplex, int>> out;
    for (const auto& f : it->second) out.emplace_back(f, sign.at(f));
    return out;
}

std::vector<Simplex> Triangulation::all_boundary_facets() const {
    std::vector<Simplex> out;
    for (auto& [name, fs] : boundary_) out.insert(out.end(), fs.begin(), fs.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::set<Vid> Triangulation::boundary_vertices() const {
    std::set<Vid> out;
    for (auto& [name, fs] : boundary_)
        for (const auto& f : fs) out.insert(f.begin(), f.end());
    return out;
}

// ---------------------------------------------------------------- moves

namespace {

Rational fresh_height(const std::map<Vid, Rational>& heights, const std::optional<Rational>& lower) {
    std::vector<Rational> hs;
    for (auto& [v, h] : heights) hs.push_back(h);
    std::sort(hs.begin(), hs.end());
    if (!lower) return hs.front() - 1;
    auto it = std::upper_bound(hs.begin(), hs.end(), *lower);
    if (it == hs.end()) return *lower + 1;
    Rational mid = (*lower + *it) / 2;
    mid.canonicalize();
    return mid;
}

struct Adjacency {
    std::map<Simplex, std::vector<FacetUse>> facets;
    std::set<Simplex> edges, triangles;
    std::map<Vid, std::vector<int>> vertex_star;
    std::map<Simplex, std::vector<int>> edge_star;
};

Adjacency adjacency(const Triangulation& t) {
    Adjacency a;
    a.facets = facet_map(t.simplices());
    for (auto& e : t.faces(1)) a.edges.insert(e);
    if (t.dim() == 3)
        for (auto& f : t.faces(2)) a.triangles.insert(f);
    for (int i = 0; i < t.num_simplices(); ++i) {
        const auto& s = t.simplices()[i];
        for (Vid v : s) a.vertex_star[v].push_back(i);
        for (size_t x = 0; x < s.size(); ++x)
            for (size_t y = x + 1; y < s.size(); ++y) a.edge_star[{s[x], s[y]}].push_back(i);
    }
    return a;
}

MoveSite make_site(const Triangulation& t, MoveKind kind, const std::vector<int>& idx) {
    MoveSite m;
    m.kind = kind;
    for (int i : idx) {
        m.simplices.push_back(t.simplices()[i]);
        m.signs.push_back(t.signs()[i]);
    }
    return m;
}

std::set<Vid> vertex_union(const std::vector<Simplex>& ss) {
    std::set<Vid> u;
    for (const auto& s : ss) u.insert(s.begin(), s.end());
    return u;
}

// Link vertices of v must span a missing simplex for 3-1 / 4-1.
bool star_is_simplex_boundary(const Triangulation& t, const Adjacency& a, Vid v, int want) {
    auto it = a.vertex_star.find(v);
    if (it == a.vertex_star.end() || static_cast<int>(it->second.size()) != want) return false;
    if (t.boundary_vertices().count(v)) return false;
    std::set<Vid> link;
    for (int i : it->second)
        for (Vid w : t.simplices()[i])
            if (w != v) link.insert(w);
    if (static_cast<int>(link.size()) != t.dim() + 1) return false;
    return t.find(Simplex(link.begin(), link.end())) < 0;
}

}  // namespace

std::vector<MoveSite> enumerate_oriented_moves(const Triangulation& t, MoveKind kind) {
    if (move_dimension(kind) != t.dim())
        fail("KindDimensionMismatch", to_string(kind) + " is not a move in dimension " + std::to_string(t.dim()));
    std::vector<MoveSite> out;
    if (t.num_simplices() == 0) return out;
    Adjacency a = adjacency(t);
    const int n = t.dim();

    if (is_expanding(kind)) {
        for (int i = 0; i < t.num_simplices(); ++i) {
            const auto& s = t.simplices()[i];
            for (int k = 0; k <= n + 1; ++k) {
                MoveSite m = make_site(t, kind, {i});
                std::optional<Rational> lower;
                if (k > 0) lower = t.height(s[k - 1]);
                m.new_height = fresh_height(t.heights(), lower);
                m.height_class = k;
                out.push_back(std::move(m));
            }
        }
        return out;
    }
    if (kind == MoveKind::M22 || kind == MoveKind::M23) {
        // Two top simplices sharing an interior facet whose opposite vertices
        // are not yet joined by an edge.
        for (auto& [f, uses] : a.facets) {
            if (uses.size() != 2) continue;
            Vid p = t.simplices()[uses[0].simplex][uses[0].omitted];
            Vid q = t.simplices()[uses[1].simplex][uses[1].omitted];
            if (a.edges.count(t.sorted({p, q}))) continue;
            out.push_back(make_site(t, kind, {uses[0].simplex, uses[1].simplex}));
        }
        return out;
    }
    if (kind == MoveKind::M32) {
        for (auto& [e, star] : a.edge_star) {
            if (star.size() != 3) continue;
            std::set<Vid> others;
            for (int i : star)
                for (Vid w : t.simplices()[i])
                    if (w != e[0] && w != e[1]) others.insert(w);
            if (others.size() != 3) continue;
            bool interior = true;
            for (Vid w : others) {
                auto usesit = a.facets.find(t.sorted({e[0], e[1], w}));
                if (usesit == a.facets.end() || usesit->second.size() != 2) interior = false;
            }
            if (!interior) continue;
            if (a.triangles.count(t.sorted(Simplex(others.begin(), others.end())))) continue;
            out.push_back(make_site(t, kind, star));
        }
        return out;
    }
    // 3-1 and 4-1.
    const int want = n + 1;
    for (auto& [v, star] : a.vertex_star)
        if (star_is_simplex_boundary(t, a, v, want)) out.push_back(make_site(t, kind, star));
    return out;
}

namespace {

struct MoveGeometry {
    std::vector<Vid> w;          // move vertices sorted by height
    std::vector<int> omitted;    // ranks in w omitted by the old simplices
    int s = 0;                   // old side = s * boundary of the (n+1)-simplex
    Vid new_vertex = -1;
};

MoveGeometry move_geometry(const Triangulation& t, const MoveSite& site, std::map<Vid, Rational>& heights) {
    MoveGeometry g;
    std::set<Vid> u = vertex_union(site.simplices);
    if (is_expanding(site.kind)) {
        if (!site.new_height) fail("StaleSite", "expanding move without a new height");
        for (auto& [v, h] : heights)
            if (h == *site.new_height) fail("StaleSite", "new height collides with vertex " + std::to_string(v));
        g.new_vertex = t.max_vertex_id() + 1;
        heights[g.new_vertex] = *site.new_height;
        u.insert(g.new_vertex);
    }
    if (static_cast<int>(u.size()) != t.dim() + 2) fail("StaleSite", "configuration does not span a move");
    g.w.assign(u.begin(), u.end());
    std::sort(g.w.begin(), g.w.end(), [&](Vid x, Vid y) { return heights.at(x) < heights.at(y); });
    for (size_t k = 0; k < site.simplices.size(); ++k) {
        const auto& s = site.simplices[k];
        int miss = -1;
        for (size_t i = 0; i < g.w.size(); ++i)
            if (std::find(s.begin(), s.end(), g.w[i]) == s.end()) miss = static_cast<int>(i);
        int sk = induced_face_sign(site.signs[k], miss);  // = sign * (-1)^miss
        if (g.s == 0) g.s = sk;
        else if (g.s != sk) fail("StaleSite", "configuration is not coherently oriented");
        g.omitted.push_back(miss);
    }
    return g;
}

}  // namespace

Triangulation apply_pachner_move(const Triangulation& t, const MoveSite& site) {
    if (move_dimension(site.kind) != t.dim()) fail("KindDimensionMismatch", "move does not match dimension");
    std::vector<int> idx;
    for (size_t k = 0; k < site.simplices.size(); ++k) {
        int i = t.find(site.simplices[k]);
        if (i < 0 || t.signs()[i] != site.signs[k]) fail("StaleSite", "configuration no longer present");
        idx.push_back(i);
    }
    const size_t expected = [&] {
        switch (site.kind) {
            case MoveKind::M13: case MoveKind::M14: return size_t{1};
            case MoveKind::M22: case MoveKind::M23: return size_t{2};
            case MoveKind::M31: case MoveKind::M32: return size_t{3};
            case MoveKind::M41: return size_t{4};
        }
        return size_t{0};
    }();
    if (site.simplices.size() != expected) fail("StaleSite", "wrong number of simplices for " + to_string(site.kind));

    std::map<Vid, Rational> heights = t.heights();
    MoveGeometry g = move_geometry(t, site, heights);
    const std::set<int> old_omit(g.omitted.begin(), g.omitted.end());

    std::vector<Simplex> simplices;
    std::vector<int> signs;
    std::set<int> removed(idx.begin(), idx.end());
    for (int i = 0; i < t.num_simplices(); ++i) {
        if (removed.count(i)) continue;
        simplices.push_back(t.simplices()[i]);
        signs.push_back(t.signs()[i]);
    }
    std::set<Simplex> existing(simplices.begin(), simplices.end());
    for (size_t j = 0; j < g.w.size(); ++j) {
        if (old_omit.count(static_cast<int>(j))) continue;
        Simplex f = drop_at(g.w, j);
        if (existing.count(f)) fail("StaleSite", "move would duplicate simplex " + simplex_str(f));
        simplices.push_back(f);
        signs.push_back(-induced_face_sign(g.s, static_cast<int>(j)));
    }
    // A contracting move to a single simplex deletes the vertex it omits.
    if (site.kind == MoveKind::M31 || site.kind == MoveKind::M41) {
        for (size_t j = 0; j < g.w.size(); ++j)
            if (!old_omit.count(static_cast<int>(j))) heights.erase(g.w[j]);
    }
    return build_triangulation(t.dim(), heights, simplices, signs, t.boundary());
}

std::string move_template_key(const Triangulation& t, const MoveSite& site) {
    std::map<Vid, Rational> heights = t.heights();
    MoveGeometry g = move_geometry(t, site, heights);
    std::map<Vid, int> rank;
    for (size_t i = 0; i < g.w.size(); ++i) rank[g.w[i]] = static_cast<int>(i);
    std::vector<std::string> parts;
    for (size_t k = 0; k < site.simplices.size(); ++k) {
        std::string p;
        for (Vid v : site.simplices[k]) p += std::to_string(rank[v]);
        p += site.signs[k] > 0 ? "+" : "-";
        parts.push_back(p);
    }
    std::sort(parts.begin(), parts.end());
    std::string key = to_string(site.kind) + ":";
    for (size_t i = 0; i < parts.size(); ++i) key += (i ? "," : "") + parts[i];
    return key;
}

std::map<std::string, std::pair<Triangulation, MoveSite>> oriented_move_representatives(MoveKind kind) {
    std::vector<Simplex> ball;
    switch (kind) {
        case MoveKind::M13: ball = {{0, 1, 2}}; break;
        case MoveKind::M22: ball = {{0, 1, 2}, {0, 2, 3}}; break;
        case MoveKind::M31: ball = {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}}; break;
        case MoveKind::M14: ball = {{0, 1, 2, 3}}; break;
        case MoveKind::M23: ball = {{0, 1, 2, 3}, {0, 1, 2, 4}}; break;
        case MoveKind::M32: ball = {{0, 1, 3, 4}, {0, 2, 3, 4}, {1, 2, 3, 4}}; break;
        case MoveKind::M41: ball = {{1, 2, 3, 4}, {0, 2, 3, 4}, {0, 1, 3, 4}, {0, 1, 2, 4}}; break;
    }
    const int dim = move_dimension(kind);
    std::set<Vid> vs;
    for (const auto& s : ball) vs.insert(s.begin(), s.end());
    std::vector<int> perm(vs.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::map<std::string, std::pair<Triangulation, MoveSite>> out;
    do {
        std::map<Vid, Rational> h;
        for (size_t i = 0; i < perm.size(); ++i) h[static_cast<Vid>(i)] = Rational(perm[i]);
        const auto signs = orient_signs(dim, h, ball);
        for (int flip : {1, -1}) {
            std::vector<int> s = signs;
            for (int& x : s) x *= flip;
            Triangulation t = build_triangulation(dim, h, ball, s);
            for (auto& site : enumerate_oriented_moves(t, kind)) {
                std::string key = move_template_key(t, site);
                if (!out.count(key)) out.emplace(key, std::make_pair(t, site));
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// ---------------------------------------------------------------- gluing

namespace {

// Heights for the vertices of b after gluing: interface vertices take the
// heights of their partners in a, the rest are slotted in so that b's
// internal order is preserved and no height of a is reused.
std::map<Vid, Rational> merged_heights(const Triangulation& a, const Triangulation& b, const std::map<Vid, Vid>& to_a,
                                       std::map<Vid, Vid>& new_id) {
    std::set<Rational> taken;
    for (auto& [v, h] : a.heights()) taken.insert(h);
    std::vector<Vid> order;
    for (auto& [v, h] : b.heights()) order.push_back(v);
    std::sort(order.begin(), order.end(), [&](Vid x, Vid y) { return b.height(x) < b.height(y); });

    std::map<Vid, Rational> out;
    Vid next = std::max(a.max_vertex_id(), 0) + 1;
    std::optional<Rational> lower;
    for (Vid v : order) {
        auto it = to_a.find(v);
        if (it != to_a.end()) {
            new_id[v] = it->second;
            lower = a.height(it->second);
            continue;
        }
        Rational h;
        if (!lower) {
            h = *taken.begin() - 1;
        } else {
            auto up = taken.upper_bound(*lower);
            if (up == taken.end()) h = *lower + 1;
            else {
                h = (*lower + *up) / 2;
                h.canonicalize();
            }
        }
        taken.insert(h);
        new_id[v] = next;
        out[next++] = h;
        lower = h;
    }
    return out;
}

}  // namespace

Triangulation glue_along_boundary(const Triangulation& a, const Triangulation& b, const std::string& name_a,
                                  const std::string& name_b, const std::map<Vid, Vid>& matching) {
    if (a.dim() != b.dim()) fail("BoundaryMismatch", "dimensions differ");
    auto fa = a.oriented_boundary(name_a);
    auto fb = b.oriented_boundary(name_b);
    if (fa.size() != fb.size()) fail("BoundaryMismatch", "boundary components have different facet counts");
    std::set<Vid> va, vb;
    for (auto& [f, s] : fa) va.insert(f.begin(), f.end());
    for (auto& [f, s] : fb) vb.insert(f.begin(), f.end());
    if (va.size() != vb.size()) fail("BoundaryMismatch", "boundary components have different vertex counts");

    std::vector<Vid> sa(va.begin(), va.end()), sb(vb.begin(), vb.end());
    std::sort(sa.begin(), sa.end(), [&](Vid x, Vid y) { return a.height(x) < a.height(y); });
    std::sort(sb.begin(), sb.end(), [&](Vid x, Vid y) { return b.height(x) < b.height(y); });
    std::map<Vid, Vid> to_a;
    if (matching.empty()) {
        for (size_t i = 0; i < sb.size(); ++i) to_a[sb[i]] = sa[i];
    } else {
        to_a = matching;
        if (to_a.size() != sb.size()) fail("BoundaryMismatch", "matching must cover the boundary component");
        for (size_t i = 0; i < sb.size(); ++i)
            if (!to_a.count(sb[i]) || to_a[sb[i]] != sa[i])
                fail("BoundaryMismatch", "matching does not preserve the height order");
    }
    std::map<Simplex, int> a_sign;
    for (auto& [f, s] : fa) a_sign[f] = s;
    for (auto& [f, s] : fb) {
        Simplex img;
        for (Vid v : f) img.push_back(to_a.at(v));
        auto it = a_sign.find(img);
        if (it == a_sign.end()) fail("BoundaryMismatch", "matching is not simplicial");
        if (it->second == s) fail("OrientationClash", "interface orientations agree; gluing needs opposite ones");
    }

    std::map<Vid, Vid> new_id;
    std::map<Vid, Rational> heights = a.heights();
    for (auto& [v, h] : merged_heights(a, b, to_a, new_id)) heights[v] = h;
    std::vector<Simplex> simplices = a.simplices();
    std::vector<int> signs = a.signs();
    for (int i = 0; i < b.num_simplices(); ++i) {
        Simplex s;
        for (Vid v : b.simplices()[i]) s.push_back(new_id.at(v));
        simplices.push_back(s);
        signs.push_back(b.signs()[i]);
    }
    std::map<std::string, std::vector<Simplex>> boundary;
    for (auto& [name, fs] : a.boundary())
        if (name != name_a) boundary[name] = fs;
    for (auto& [name, fs] : b.boundary()) {
        if (name == name_b) continue;
        std::string nm = name;
        while (boundary.count(nm)) nm += "'";
        for (const auto& f : fs) {
            Simplex g;
            for (Vid v : f) g.push_back(new_id.at(v));
            boundary[nm].push_back(g);
        }
    }
    return build_triangulation(a.dim(), heights, simplices, signs, boundary);
}

Triangulation disjoint_union(const Triangulation& a, const Triangulation& b) {
    if (a.dim() != b.dim()) fail("BadDimension", "disjoint union of different dimensions");
    Vid off = a.max_vertex_id() + 1 - (b.heights().empty() ? 0 : b.heights().begin()->first);
    Rational hmax = a.heights().empty() ? Rational(0) : a.heights().begin()->second;
    for (auto& [v, h] : a.heights()) hmax = std::max(hmax, h);
    Rational hmin = b.heights().empty() ? Rational(0) : b.heights().begin()->second;
    for (auto& [v, h] : b.heights()) hmin = std::min(hmin, h);
    std::map<Vid, Rational> heights = a.heights();
    for (auto& [v, h] : b.heights()) heights[v + off] = h - hmin + hmax + 1;
    auto simplices = a.simplices();
    auto signs = a.signs();
    for (int i = 0; i < b.num_simplices(); ++i) {
        Simplex s;
        for (Vid v : b.simplices()[i]) s.push_back(v + off);
        simplices.push_back(s);
        signs.push_back(b.signs()[i]);
    }
    std::map<std::string, std::vector<Simplex>> boundary = a.boundary();
    for (auto& [name, fs] : b.boundary()) {
        std::string nm = name;
        while (boundary.count(nm)) nm += "'";
        for (const auto& f : fs) {
            Simplex g;
            for (Vid v : f) g.push_back(v + off);
            boundary[nm].push_back(g);
        }
    }
    return build_triangulation(a.dim(), heights, simplices, signs, boundary);
}

Triangulation mirror(const Triangulation& t) {
    auto signs = t.signs();
    for (int& s : signs) s = -s;
    return build_triangulation(t.dim(), t.heights(), t.simplices(), signs, t.boundary());
}

Triangulation subcomplex(const Triangulation& t, const std::vector<int>& simplex_indices) {
    std::vector<Simplex> ss;
    std::vector<int> signs;
    std::set<Vid> used;
    for (int i : simplex_indices) {
        ss.push_back(t.simplices().at(i));
        signs.push_back(t.signs().at(i));
        used.insert(ss.back().begin(), ss.back().end());
    }
    std::map<Vid, Rational> h;
    for (Vid v : used) h[v] = t.height(v);
    return build_triangulation(t.dim(), h, ss, signs);
}

Triangulation rename_boundary(const Triangulation& t, const std::map<std::string, std::string>& names) {
    std::map<std::string, std::vector<Simplex>> b;
    for (auto& [name, fs] : t.boundary()) {
        auto it = names.find(name);
        std::string nm = it == names.end() ? name : it->second;
        if (b.count(nm)) fail("BadBoundaryMarks", "boundary name '" + nm + "' used twice");
        b[nm] = fs;
    }
    return build_triangulation(t.dim(), t.heights(), t.simplices(), t.signs(), b);
}

// ---------------------------------------------------------------- isomorphism

std::string canonical_form(const Triangulation& t) {
    std::vector<Vid> order;
    for (auto& [v, h] : t.heights()) order.push_back(v);
    std::sort(order.begin(), order.end(), [&](Vid x, Vid y) { return t.height(x) < t.height(y); });
    std::map<Vid, int> rank;
    for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
    auto relabel = [&](const Simplex& s) {
        std::string r;
        for (size_t i = 0; i < s.size(); ++i) r += (i ? " " : "") + std::to_string(rank[s[i]]);
        return r;
    };
    std::vector<std::string> tops;
    for (int i = 0; i < t.num_simplices(); ++i)
        tops.push_back(relabel(t.simplices()[i]) + (t.signs()[i] > 0 ? " +" : " -"));
    std::sort(tops.begin(), tops.end());
    std::ostringstream os;
    os << "dim " << t.dim() << "; vertices " << t.num_vertices() << ";";
    for (auto& s : tops) os << " [" << s << "]";
    for (auto& [name, fs] : t.boundary()) {
        std::vector<std::string> b;
        for (auto& f : fs) b.push_back(relabel(f));
        std::sort(b.begin(), b.end());
        os << "; " << name << ":";
        for (auto& s : b) os << " [" << s << "]";
    }
    return os.str();
}

namespace {

struct Neighbors {
    // nb[s][i] = (neighbor simplex across the facet omitting rank i, its omitted rank), or (-1,-1)
    std::vector<std::vector<std::pair<int, int>>> nb;
};

Neighbors neighbors(const Triangulation& t) {
    Neighbors n;
    n.nb.assign(t.num_simplices(), std::vector<std::pair<int, int>>(t.dim() + 1, {-1, -1}));
    for (auto& [f, uses] : facet_map(t.simplices())) {
        if (uses.size() != 2) continue;
        n.nb[uses[0].simplex][uses[0].omitted] = {uses[1].simplex, uses[1].omitted};
        n.nb[uses[1].simplex][uses[1].omitted] = {uses[0].simplex, uses[0].omitted};
    }
    return n;
}

std::vector<std::vector<int>> components(const Triangulation& t, const Neighbors& n) {
    std::vector<int> comp(t.num_simplices(), -1);
    std::vector<std::vector<int>> out;
    for (int r = 0; r < t.num_simplices(); ++r) {
        if (comp[r] >= 0) continue;
        out.emplace_back();
        std::vector<int> stack{r};
        comp[r] = static_cast<int>(out.size()) - 1;
        while (!stack.empty()) {
            int s = stack.back();
            stack.pop_back();
            out.back().push_back(s);
            for (auto [m, j] : n.nb[s])
                if (m >= 0 && comp[m] < 0) {
                    comp[m] = comp[r];
                    stack.push_back(m);
                }
        }
    }
    return out;
}

// Try to extend sa -> sb (positional vertex map) over the component of sa.
bool extend(const Triangulation& a, const Neighbors& na, const Triangulation& b, const Neighbors& nb, int sa, int sb,
            std::map<Vid, Vid>& vmap, std::map<int, int>& smap) {
    std::map<Vid, Vid> inv;
    std::queue<std::pair<int, int>> q;
    auto bind = [&](int x, int y) {
        const auto& X = a.simplices()[x];
        const auto& Y = b.simplices()[y];
        if (a.signs()[x] != b.signs()[y]) return false;
        for (size_t i = 0; i < X.size(); ++i) {
            auto it = vmap.find(X[i]);
            if (it != vmap.end() && it->second != Y[i]) return false;
            auto jt = inv.find(Y[i]);
            if (jt != inv.end() && jt->second != X[i]) return false;
            vmap[X[i]] = Y[i];
            inv[Y[i]] = X[i];
        }
        smap[x] = y;
        q.emplace(x, y);
        return true;
    };
    if (!bind(sa, sb)) return false;
    while (!q.empty()) {
        auto [x, y] = q.front();
        q.pop();
        for (int i = 0; i <= a.dim(); ++i) {
            auto [xn, xi] = na.nb[x][i];
            auto [yn, yi] = nb.nb[y][i];
            if ((xn < 0) != (yn < 0)) return false;
            if (xn < 0) continue;
            auto it = smap.find(xn);
            if (it != smap.end()) {
                if (it->second != yn) return false;
                continue;
            }
            if (!bind(xn, yn)) return false;
        }
    }
    return true;
}

}  // namespace

bool isomorphic(const Triangulation& a, const Triangulation& b) {
    if (a.dim() != b.dim() || a.num_vertices() != b.num_vertices() || a.num_simplices() != b.num_simplices())
        return false;
    Neighbors na = neighbors(a), nb = neighbors(b);
    auto ca = components(a, na), cb = components(b, nb);
    if (ca.size() != cb.size()) return false;
    std::vector<bool> used(cb.size(), false);
    for (const auto& comp : ca) {
        bool matched = false;
        for (size_t j = 0; j < cb.size() && !matched; ++j) {
            if (used[j] || cb[j].size() != comp.size()) continue;
            for (int y : cb[j]) {
                std::map<Vid, Vid> vmap;
                std::map<int, int> smap;
                if (extend(a, na, b, nb, comp[0], y, vmap, smap)) {
                    used[j] = true;
                    matched = true;
                    break;
                }
            }
        }
        if (!matched) return false;
    }
    return true;
}

}  // namespace orb
