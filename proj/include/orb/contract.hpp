#pragma once

#include <functional>
#include <map>
#include <vector>

#include "orb/scalar.hpp"

namespace orb {

// Sum over all labelings of a set of finite-domain variables of a product of
// local factors, by variable elimination along a fixed order. Partial states
// are kept sparse: a labeling of the currently active variables survives only
// while every completed factor is nonzero, so admissibility constraints prune
// early. Output variables are never summed out; the result is indexed by
// their labels.
class SumProduct {
public:
    using Factor = std::function<Scalar(const int* labels)>;
    using Constraint = std::function<bool(const int* labels)>;

    int add_variable(int domain);
    void add_factor(std::vector<int> scope, Factor f);
    void add_constraint(std::vector<int> scope, Constraint c);
    void set_outputs(std::vector<int> vars) { outputs_ = std::move(vars); }
    void set_scale(Scalar s) { scale_ = std::move(s); }
    // Optional explicit elimination order (a permutation of all variables);
    // otherwise a greedy order minimising the active set is used.
    void set_order(std::vector<int> order) { order_ = std::move(order); }

    int num_variables() const { return static_cast<int>(domain_.size()); }

    // Nonzero entries only, keyed by output labels in set_outputs order.
    std::map<std::vector<int>, Scalar> evaluate() const;

    // Diagnostics from the last evaluate() call.
    mutable size_t peak_states = 0;
    mutable size_t peak_active = 0;

private:
    struct Term {
        std::vector<int> scope;
        Factor f;
        Constraint c;
    };
    std::vector<int> greedy_order() const;

    std::vector<int> domain_;
    std::vector<Term> terms_;
    std::vector<int> outputs_;
    std::vector<int> order_;
    Scalar scale_ = Scalar(1);
};

}  // namespace orb
