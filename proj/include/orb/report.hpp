#pragma once

#include <string>
#include <vector>

#include "orb/scalar.hpp"

namespace orb {

// Outcome of one identity checked over a family of index assignments.
struct CheckRecord {
    std::string name;
    bool pass = true;
    double residual = 0.0;  // largest |lhs - rhs|
    bool exact = true;      // every compared value was an exact rational
    std::vector<int> witness;  // indices of the worst entry (empty when it is zero)
    std::string note;
};

struct Report {
    std::vector<CheckRecord> records;

    bool all_pass() const;
    double max_residual() const;
    const CheckRecord& at(const std::string& name) const;
    bool has(const std::string& name) const;
};

// Accumulates the worst discrepancy of an identity. Exact comparisons pass
// only on equality; anything involving floats passes within `tol`.
class Residual {
public:
    explicit Residual(std::string name) { rec_.name = std::move(name); }
    void add(const Scalar& lhs, const Scalar& rhs, const std::vector<int>& where);
    CheckRecord finish(double tol) const;

private:
    CheckRecord rec_;
    bool any_ = false;
};

constexpr double kDefaultTol = 1e-9;

}  // namespace orb
