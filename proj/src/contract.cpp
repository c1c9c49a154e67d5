#include "orb/contract.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "orb/error.hpp"

namespace orb {

int SumProduct::add_variable(int domain) {
    if (domain < 1 || domain > 255) fail("BadDomain", "variable domain must be in 1..255");
    domain_.push_back(domain);
    return static_cast<int>(domain_.size()) - 1;
}

void SumProduct::add_factor(std::vector<int> scope, Factor f) {
    terms_.push_back({std::move(scope), std::move(f), nullptr});
}

void SumProduct::add_constraint(std::vector<int> scope, Constraint c) {
    terms_.push_back({std::move(scope), nullptr, std::move(c)});
}

std::vector<int> SumProduct::greedy_order() const {
    const int n = num_variables();
    std::vector<std::vector<int>> terms_of(n);
    for (size_t t = 0; t < terms_.size(); ++t)
        for (int v : terms_[t].scope) terms_of[v].push_back(static_cast<int>(t));
    for (auto& l : terms_of) l.erase(std::unique(l.begin(), l.end()), l.end());

    std::vector<int> unassigned_in_term(terms_.size());
    for (size_t t = 0; t < terms_.size(); ++t) {
        auto s = terms_[t].scope;
        std::sort(s.begin(), s.end());
        unassigned_in_term[t] = static_cast<int>(std::unique(s.begin(), s.end()) - s.begin());
    }
    std::vector<bool> is_output(n, false), assigned(n, false), active(n, false);
    for (int v : outputs_) is_output[v] = true;
    std::vector<double> weight(n);
    for (int v = 0; v < n; ++v) weight[v] = std::log2(static_cast<double>(domain_[v])) + 1e-3;

    auto droppable_after = [&](int u, int v) {
        if (is_output[u]) return false;
        for (int t : terms_of[u]) {
            int left = unassigned_in_term[t];
            bool has_v = std::find(terms_[t].scope.begin(), terms_[t].scope.end(), v) != terms_[t].scope.end();
            if (left == 0) continue;
            if (left == 1 && has_v) continue;
            return false;
        }
        return true;
    };

    std::vector<int> order;
    order.reserve(n);
    double active_weight = 0.0;
    std::vector<int> active_list;
    for (int step = 0; step < n; ++step) {
        int best = -1;
        double best_cost = 0.0;
        int best_links = -1;
        for (int v = 0; v < n; ++v) {
            if (assigned[v]) continue;
            double drop = droppable_after(v, v) ? weight[v] : 0.0;
            int links = 0;
            for (int u : active_list) {
                bool adjacent = false;
                for (int t : terms_of[v]) {
                    const auto& sc = terms_[t].scope;
                    if (std::find(sc.begin(), sc.end(), u) != sc.end()) { adjacent = true; break; }
                }
                if (!adjacent) continue;
                ++links;
                if (droppable_after(u, v)) drop += weight[u];
            }
            double cost = active_weight + weight[v] - drop;
            if (best < 0 || cost < best_cost - 1e-9 ||
                (std::fabs(cost - best_cost) <= 1e-9 && links > best_links)) {
                best = v;
                best_cost = cost;
                best_links = links;
            }
        }
        // Commit.
        std::vector<int> dropped;
        for (int u : active_list)
            if (droppable_after(u, best)) dropped.push_back(u);
        bool self_drop = droppable_after(best, best);
        assigned[best] = true;
        for (int t : terms_of[best]) --unassigned_in_term[t];
        order.push_back(best);
        if (!self_drop) {
            active[best] = true;
            active_list.push_back(best);
            active_weight += weight[best];
        }
        for (int u : dropped) {
            active[u] = false;
            active_weight -= weight[u];
            active_list.erase(std::find(active_list.begin(), active_list.end(), u));
        }
    }
    return order;
}

namespace {

// States are kept in insertion order so floating-point summation order is a
// deterministic function of the inputs.
struct StateTable {
    std::vector<std::pair<std::string, Scalar>> items;
    std::unordered_map<std::string, size_t> index;

    void add(std::string key, Scalar value) {
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, items.size());
            items.emplace_back(std::move(key), std::move(value));
        } else {
            items[it->second].second += value;
        }
    }
};

}  // namespace

std::map<std::vector<int>, Scalar> SumProduct::evaluate() const {
    const int n = num_variables();
    std::vector<int> order = order_.empty() ? greedy_order() : order_;
    if (static_cast<int>(order.size()) != n) fail("BadOrder", "elimination order must cover all variables");
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n; ++i) {
        if (order[i] < 0 || order[i] >= n || pos[order[i]] >= 0) fail("BadOrder", "not a permutation");
        pos[order[i]] = i;
    }
    std::vector<bool> is_output(n, false);
    for (int v : outputs_) is_output[v] = true;

    // Step at which each term becomes fully assigned, and last use of each variable.
    std::vector<std::vector<int>> completes_at(n);
    std::vector<int> last_use(n);
    for (int v = 0; v < n; ++v) last_use[v] = pos[v];
    for (size_t t = 0; t < terms_.size(); ++t) {
        int c = -1;
        for (int v : terms_[t].scope) c = std::max(c, pos[v]);
        if (c < 0) {
            continue;  // constant term; handled below
        }
        completes_at[c].push_back(static_cast<int>(t));
        for (int v : terms_[t].scope) last_use[v] = std::max(last_use[v], c);
    }

    Scalar constant = scale_;
    for (const auto& term : terms_) {
        if (!term.scope.empty()) continue;
        if (term.c) {
            if (!term.c(nullptr)) constant = Scalar(0);
        } else {
            constant *= term.f(nullptr);
        }
    }

    StateTable cur;
    cur.add(std::string(), constant);
    if (constant.is_zero()) cur.items.clear();
    std::vector<int> active;
    peak_states = 1;
    peak_active = 0;
    std::vector<int> buf;
    std::vector<int> slot(n, -1);

    for (int step = 0; step < n && !cur.items.empty(); ++step) {
        int v = order[step];
        std::vector<int> full = active;
        full.push_back(v);
        for (size_t i = 0; i < full.size(); ++i) slot[full[i]] = static_cast<int>(i);

        struct Bound {
            const Term* term;
            std::vector<int> idx;
        };
        std::vector<Bound> constraints, factors;
        for (int t : completes_at[step]) {
            Bound b{&terms_[t], {}};
            for (int u : terms_[t].scope) b.idx.push_back(slot[u]);
            (terms_[t].c ? constraints : factors).push_back(std::move(b));
        }
        std::vector<int> keep;
        std::vector<int> next_active;
        for (size_t i = 0; i < full.size(); ++i) {
            int u = full[i];
            if (!is_output[u] && last_use[u] <= step) continue;
            keep.push_back(static_cast<int>(i));
            next_active.push_back(u);
        }

        StateTable nxt;
        std::vector<int> labels(full.size());
        const int dom = domain_[v];
        for (auto& [key, value] : cur.items) {
            for (size_t i = 0; i < key.size(); ++i) labels[i] = static_cast<unsigned char>(key[i]);
            for (int l = 0; l < dom; ++l) {
                labels.back() = l;
                bool ok = true;
                for (const auto& b : constraints) {
                    buf.resize(b.idx.size());
                    for (size_t k = 0; k < b.idx.size(); ++k) buf[k] = labels[b.idx[k]];
                    if (!b.term->c(buf.data())) { ok = false; break; }
                }
                if (!ok) continue;
                Scalar w = value;
                for (const auto& b : factors) {
                    buf.resize(b.idx.size());
                    for (size_t k = 0; k < b.idx.size(); ++k) buf[k] = labels[b.idx[k]];
                    Scalar f = b.term->f(buf.data());
                    if (f.is_zero()) { ok = false; break; }
                    w *= f;
                }
                if (!ok || w.is_zero()) continue;
                std::string nk(keep.size(), '\0');
                for (size_t k = 0; k < keep.size(); ++k) nk[k] = static_cast<char>(labels[keep[k]]);
                nxt.add(std::move(nk), std::move(w));
            }
        }
        for (int u : full) slot[u] = -1;
        active = std::move(next_active);
        cur = std::move(nxt);
        peak_states = std::max(peak_states, cur.items.size());
        peak_active = std::max(peak_active, active.size());
    }

    std::map<std::vector<int>, Scalar> out;
    if (cur.items.empty()) return out;
    std::vector<int> where(outputs_.size());
    for (size_t i = 0; i < outputs_.size(); ++i) {
        auto it = std::find(active.begin(), active.end(), outputs_[i]);
        where[i] = static_cast<int>(it - active.begin());
    }
    for (auto& [key, value] : cur.items) {
        if (value.is_zero()) continue;
        std::vector<int> k(outputs_.size());
        for (size_t i = 0; i < outputs_.size(); ++i) k[i] = static_cast<unsigned char>(key[where[i]]);
        auto [it, fresh] = out.emplace(std::move(k), value);
        if (!fresh) it->second += value;
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero()) it = out.erase(it);
        else ++it;
    }
    return out;
}

}  // namespace orb
