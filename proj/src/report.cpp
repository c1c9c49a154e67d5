#include "orb/report.hpp"

#include <algorithm>

#include "orb/error.hpp"

namespace orb {

bool Report::all_pass() const {
    return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

double Report::max_residual() const {
    double m = 0.0;
    for (const auto& r : records) m = std::max(m, r.residual);
    return m;
}

const CheckRecord& Report::at(const std::string& name) const {
    for (const auto& r : records)
        if (r.name == name) return r;
    fail("UnknownCheck", "no record named '" + name + "'");
}

bool Report::has(const std::string& name) const {
    return std::any_of(records.begin(), records.end(), [&](const CheckRecord& r) { return r.name == name; });
}

void Residual::add(const Scalar& lhs, const Scalar& rhs, const std::vector<int>& where) {
    if (!lhs.is_exact() || !rhs.is_exact()) rec_.exact = false;
    double d = distance(lhs, rhs);
    if (!any_ || d > rec_.residual) {
        if (d > 0.0 || !any_) rec_.witness = d > 0.0 ? where : std::vector<int>{};
        rec_.residual = std::max(rec_.residual, d);
    }
    any_ = true;
}

CheckRecord Residual::finish(double tol) const {
    CheckRecord r = rec_;
    r.pass = r.exact ? r.residual == 0.0 : r.residual <= tol;
    return r;
}

}  // namespace orb
