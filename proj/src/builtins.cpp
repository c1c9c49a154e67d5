#include <algorithm>
#include <array>

#include "orb/error.hpp"
#include "orb/mesh.hpp"

namespace orb {

namespace {

std::vector<Simplex> simplex_boundary(int n) {
    std::vector<Simplex> out;
    for (int omit = 0; omit <= n; ++omit) {
        Simplex s;
        for (int v = 0; v <= n; ++v)
            if (v != omit) s.push_back(v);
        out.push_back(s);
    }
    return out;
}

std::vector<Simplex> torus7() {
    std::vector<Simplex> out;
    for (int i = 0; i < 7; ++i) {
        out.push_back({i, (i + 1) % 7, (i + 3) % 7});
        out.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return out;
}

// Connected sum of g seven-vertex tori in a chain. Torus t is glued to
// torus t+1 by identifying the triangle {2,4,5} of t with {0,1,3} of t+1.
std::vector<Simplex> genus_surface(int g) {
    const Simplex head{0, 1, 3}, tail{2, 4, 5};
    std::vector<Simplex> out;
    std::vector<std::array<int, 7>> id(g);
    int next = 0;
    for (int t = 0; t < g; ++t) {
        id[t].fill(-1);
        if (t > 0)
            for (int k = 0; k < 3; ++k) id[t][head[k]] = id[t - 1][tail[k]];
        for (int v = 0; v < 7; ++v)
            if (id[t][v] < 0) id[t][v] = next++;
        for (const auto& tri : torus7()) {
            Simplex s = tri;
            std::sort(s.begin(), s.end());
            if ((t > 0 && s == head) || (t + 1 < g && s == tail)) continue;
            out.push_back({id[t][tri[0]], id[t][tri[1]], id[t][tri[2]]});
        }
    }
    return out;
}

// K x C3 with each prism (a<b<c) x [t,t+1] split along the staircase.
std::vector<Simplex> times_circle(const std::vector<Simplex>& k) {
    int nk = 0;
    for (const auto& s : k)
        for (Vid v : s) nk = std::max(nk, v + 1);
    auto at = [&](Vid v, int t) { return v + nk * (t % 3); };
    std::vector<Simplex> out;
    for (const auto& tri : k) {
        Simplex s = tri;
        std::sort(s.begin(), s.end());
        const Vid a = s[0], b = s[1], c = s[2];
        for (int t = 0; t < 3; ++t) {
            out.push_back({at(a, t), at(b, t), at(c, t), at(c, t + 1)});
            out.push_back({at(a, t), at(b, t), at(b, t + 1), at(c, t + 1)});
            out.push_back({at(a, t), at(a, t + 1), at(b, t + 1), at(c, t + 1)});
        }
    }
    return out;
}

// Boundary of the 4-cube modulo the antipodal map. Vertex classes are the
// representatives with x1 = +1 (ids 0..7), cube centres are ids 8..11. Each
// square is split along the diagonal whose endpoints satisfy
// x_i x_j = sigma_ij x_k x_l, with sigma of complementary pairs opposite so
// that antipodal squares never create a doubled edge.
std::vector<Simplex> rp3() {
    using Pt = std::array<int, 4>;
    auto cls = [](Pt x) {
        if (x[0] < 0)
            for (int& c : x) c = -c;
        return ((x[1] > 0) << 2) | ((x[2] > 0) << 1) | (x[3] > 0);
    };
    auto sigma = [](int i, int j) {
        if (i > j) std::swap(i, j);
        return i == 0 ? 1 : -1;
    };
    std::vector<Simplex> out;
    for (int i = 0; i < 4; ++i) {
        for (int k = 0; k < 4; ++k) {
            if (k == i) continue;
            for (int s : {1, -1}) {
                int j = -1, l = -1;
                for (int m = 0; m < 4; ++m)
                    if (m != i && m != k) (j < 0 ? j : l) = m;
                std::vector<Pt> diag, other;
                for (int a : {1, -1})
                    for (int b : {1, -1}) {
                        Pt x{};
                        x[i] = 1;
                        x[k] = s;
                        x[j] = a;
                        x[l] = b;
                        (a * b == sigma(j, l) * x[i] * x[k] ? diag : other).push_back(x);
                    }
                for (const auto& r : other) out.push_back({8 + i, cls(diag[0]), cls(diag[1]), cls(r)});
            }
        }
    }
    return out;
}

void need(const std::vector<int>& params, size_t n, const std::string& name) {
    if (params.size() != n) fail("BadParams", name + " takes " + std::to_string(n) + " parameter(s)");
}

}  // namespace

std::vector<std::string> builtin_manifold_names() {
    return {"sphere2", "torus2", "surface_genus", "sphere3", "s2xs1", "torus3", "rp3", "disk", "annulus", "ball3"};
}

Triangulation builtin_manifold(const std::string& raw, const std::vector<int>& params) {
    std::string name = raw;
    if (name == "s2") name = "sphere2";
    if (name == "t2") name = "torus2";
    if (name == "s3") name = "sphere3";
    if (name == "t3") name = "torus3";
    if (name == "sphere2") {
        need(params, 0, name);
        return build_oriented(2, simplex_boundary(3));
    }
    if (name == "torus2") {
        need(params, 0, name);
        return build_oriented(2, torus7());
    }
    if (name == "surface_genus") {
        need(params, 1, name);
        if (params[0] < 0) fail("BadParams", "genus must be nonnegative");
        if (params[0] == 0) return build_oriented(2, simplex_boundary(3));
        return build_oriented(2, genus_surface(params[0]));
    }
    if (name == "sphere3") {
        need(params, 0, name);
        return build_oriented(3, simplex_boundary(4));
    }
    if (name == "s2xs1") {
        need(params, 0, name);
        return build_oriented(3, times_circle(simplex_boundary(3)));
    }
    if (name == "torus3") {
        need(params, 0, name);
        return build_oriented(3, times_circle(torus7()));
    }
    if (name == "rp3") {
        need(params, 0, name);
        return build_oriented(3, rp3());
    }
    if (name == "disk") {
        need(params, 1, name);
        const int k = params[0];
        if (k < 3) fail("BadParams", "disk needs at least 3 boundary edges");
        std::vector<Simplex> tris;
        std::vector<Simplex> rim;
        for (int i = 1; i <= k; ++i) {
            int j = i % k + 1;
            tris.push_back({0, i, j});
            rim.push_back({i, j});
        }
        return build_oriented(2, tris, {{"out", rim}});
    }
    if (name == "annulus") {
        need(params, 1, name);
        const int k = params[0];
        if (k < 3) fail("BadParams", "annulus needs at least 3 edges per circle");
        std::vector<Simplex> tris, in, out;
        for (int i = 0; i < k; ++i) {
            int j = (i + 1) % k;
            tris.push_back({i, j, k + i});
            tris.push_back({j, k + i, k + j});
            in.push_back({i, j});
            out.push_back({k + i, k + j});
        }
        // Oriented so that the out circle of a disk caps the in circle.
        return mirror(build_oriented(2, tris, {{"in", in}, {"out", out}}));
    }
    if (name == "ball3") {
        need(params, 0, name);
        return build_oriented(3, {{0, 1, 2, 3}});
    }
    fail("UnknownName", "unknown manifold '" + raw + "'");
}

}  // namespace orb
