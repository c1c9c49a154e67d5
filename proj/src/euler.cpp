#include "orb/euler.hpp"

#include <algorithm>
#include <set>

#include "orb/error.hpp"

namespace orb {

namespace {

void add_faces(const Simplex& s, std::set<Simplex>& out) {
    const int m = static_cast<int>(s.size());
    for (int mask = 1; mask < (1 << m); ++mask) {
        Simplex f;
        for (int i = 0; i < m; ++i)
            if (mask & (1 << i)) f.push_back(s[i]);
        out.insert(f);
    }
}

long signed_count(const std::vector<Simplex>& cells) {
    long c = 0;
    for (const auto& s : cells) c += (s.size() % 2 == 1) ? 1 : -1;
    return c;
}

}  // namespace

StratifiedComplex::StratifiedComplex(Triangulation t, std::vector<StratumSpec> strata)
    : tri_(std::move(t)), strata_(std::move(strata)) {
    const int n = tri_.dim();
    std::set<Simplex> all;
    for (const auto& s : tri_.simplices()) add_faces(s, all);

    std::vector<std::set<Simplex>> closure(strata_.size());
    for (size_t a = 0; a < strata_.size(); ++a) {
        auto& st = strata_[a];
        if (st.dim < 0 || st.dim > n) fail("BadStratum", "stratum '" + st.label + "' has an invalid dimension");
        if (st.simplices.empty()) fail("BadStratum", "stratum '" + st.label + "' is empty");
        for (auto& s : st.simplices) {
            if (static_cast<int>(s.size()) != st.dim + 1)
                fail("BadStratum", "stratum '" + st.label + "' lists a simplex of the wrong dimension");
            for (Vid v : s)
                if (!tri_.heights().count(v)) fail("BadStratum", "stratum '" + st.label + "' uses an unknown vertex");
            s = tri_.sorted(s);
            if (!all.count(s)) fail("BadStratum", "stratum '" + st.label + "' lists a simplex not in the complex");
            add_faces(s, closure[a]);
        }
    }

    cells_.assign(strata_.size(), {});
    std::map<Simplex, int> owner;
    for (const auto& s : all) {
        int best = -1;
        bool tie = false;
        for (size_t a = 0; a < strata_.size(); ++a) {
            if (!closure[a].count(s)) continue;
            if (best < 0 || strata_[a].dim < strata_[best].dim) {
                best = static_cast<int>(a);
                tie = false;
            } else if (strata_[a].dim == strata_[best].dim) {
                tie = true;
            }
        }
        if (best < 0) fail("BadStratum", "a simplex lies in no stratum");
        if (tie) fail("AmbiguousStratum", "a simplex lies in the closure of two strata of equal dimension");
        owner[s] = best;
        cells_[best].push_back(s);
    }
    for (const auto& s : tri_.simplices())
        if (strata_[owner[s]].dim != n) fail("BadStratum", "a top simplex is not in a top-dimensional stratum");
    for (size_t a = 0; a < strata_.size(); ++a)
        for (const auto& s : strata_[a].simplices)
            if (owner[s] != static_cast<int>(a))
                fail("FrontierViolation", "stratum '" + strata_[a].label + "' is swallowed by a lower stratum");

    // Connectivity through codimension-one faces owned by the same stratum.
    for (size_t a = 0; a < strata_.size(); ++a) {
        const auto& tops = strata_[a].simplices;
        std::vector<int> comp(tops.size(), -1);
        std::map<Simplex, std::vector<int>> by_face;
        for (size_t i = 0; i < tops.size(); ++i)
            for (size_t k = 0; k < tops[i].size() && tops[i].size() > 1; ++k) {
                Simplex f = tops[i];
                f.erase(f.begin() + static_cast<long>(k));
                auto it = owner.find(f);
                if (it != owner.end() && it->second == static_cast<int>(a)) by_face[f].push_back(static_cast<int>(i));
            }
        std::vector<int> stack{0};
        comp[0] = 0;
        size_t reached = 0;
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            ++reached;
            for (size_t k = 0; k < tops[i].size() && tops[i].size() > 1; ++k) {
                Simplex f = tops[i];
                f.erase(f.begin() + static_cast<long>(k));
                for (int j : by_face[f])
                    if (comp[j] < 0) {
                        comp[j] = 0;
                        stack.push_back(j);
                    }
            }
        }
        if (reached != tops.size()) fail("DisconnectedStratum", "stratum '" + strata_[a].label + "' is not connected");
    }

    // Frontier condition: a stratum meeting the closure of another lies in it.
    for (size_t a = 0; a < strata_.size(); ++a)
        for (size_t b = 0; b < strata_.size(); ++b) {
            if (a == b) continue;
            size_t inside = 0;
            for (const auto& s : cells_[a]) inside += closure[b].count(s);
            if (inside != 0 && inside != cells_[a].size())
                fail("FrontierViolation",
                     "stratum '" + strata_[a].label + "' meets the closure of '" + strata_[b].label + "' partially");
        }
}

StratifiedComplex StratifiedComplex::trivial(const Triangulation& t, const std::string& label) {
    return StratifiedComplex(t, {StratumSpec{t.dim(), label, t.simplices()}});
}

std::vector<StratumEuler> euler_characteristics(const StratifiedComplex& x) {
    std::set<Simplex> bd;
    for (const auto& f : x.underlying().all_boundary_facets()) add_faces(f, bd);
    std::vector<StratumEuler> out;
    for (size_t a = 0; a < x.strata().size(); ++a) {
        const auto& cells = x.cells()[a];
        std::vector<Simplex> on_bd;
        for (const auto& s : cells)
            if (bd.count(s)) on_bd.push_back(s);
        const long c = signed_count(cells), cb = signed_count(on_bd);
        const int j = x.strata()[a].dim;
        const long sj = (j % 2 == 0) ? 1 : -1;
        // c and cb are compactly supported Euler characteristics of the
        // stratum and of its part on the boundary; by duality
        // chi(S) = (-1)^j (c - cb) and chi(S meets boundary) = (-1)^(j-1) cb.
        StratumEuler e;
        e.label = x.strata()[a].label;
        e.dim = j;
        e.chi = sj * (c - cb);
        e.chi_tilde = sj * (2 * c - cb);
        out.push_back(e);
    }
    return out;
}

std::vector<StratumEuler> euler_characteristics(const Triangulation& t) {
    return euler_characteristics(StratifiedComplex::trivial(t));
}

Scalar z_euler_evaluate(const StratifiedComplex& m, const EulerWeights& w) {
    Scalar z(1);
    for (const auto& e : euler_characteristics(m)) {
        if (e.dim < 1) continue;
        auto it = w.psi.find(e.dim);
        if (it == w.psi.end()) continue;
        if (it->second.is_zero()) fail("NonInvertibleWeight", "psi_" + std::to_string(e.dim) + " is zero");
        z *= it->second.pow(e.chi_tilde);
    }
    return z;
}

}  // namespace orb
