#pragma once

#include <map>
#include <string>
#include <vector>

#include "orb/mesh.hpp"
#include "orb/scalar.hpp"

namespace orb {

// A stratum is declared by its simplices of dimension `dim`. Lower faces are
// assigned to the lowest-dimensional declared stratum whose closure contains
// them, so a stratum is an open cell complex and strata partition the
// triangulation.
struct StratumSpec {
    int dim = 0;
    std::string label;
    std::vector<Simplex> simplices;
};

class StratifiedComplex {
public:
    // Validates: every top simplex in exactly one top stratum, unambiguous
    // assignment of faces, connected strata, combinatorial frontier condition.
    StratifiedComplex(Triangulation t, std::vector<StratumSpec> strata);
    // One top-dimensional stratum covering everything.
    static StratifiedComplex trivial(const Triangulation& t, const std::string& label = "M");

    const Triangulation& underlying() const { return tri_; }
    const std::vector<StratumSpec>& strata() const { return strata_; }
    // Open simplices (all dimensions) belonging to each stratum.
    const std::vector<std::vector<Simplex>>& cells() const { return cells_; }

private:
    Triangulation tri_;
    std::vector<StratumSpec> strata_;
    std::vector<std::vector<Simplex>> cells_;
};

struct StratumEuler {
    std::string label;
    int dim = 0;
    long chi = 0;        // Euler characteristic of the stratum
    long chi_tilde = 0;  // 2 chi - chi(stratum meets the boundary)
};

std::vector<StratumEuler> euler_characteristics(const StratifiedComplex& x);
std::vector<StratumEuler> euler_characteristics(const Triangulation& t);

// psi_j for stratum dimension j >= 1; a dimension without an entry carries
// no weight.
struct EulerWeights {
    std::map<int, Scalar> psi;
};

// Product over strata of dimension >= 1 of psi_dim ^ chi_tilde.
Scalar z_euler_evaluate(const StratifiedComplex& m, const EulerWeights& w);

}  // namespace orb
