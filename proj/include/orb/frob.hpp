#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orb/linalg.hpp"
#include "orb/report.hpp"
#include "orb/scalar.hpp"

namespace orb {

// Finite-dimensional algebra with counit, given by structure constants in a
// fixed basis: e_a e_b = sum_c mu(a,b,c) e_c, 1 = sum_a eta(a) e_a,
// Delta(e_a) = sum_{b,c} delta(a,b,c) e_b (x) e_c.
struct FrobeniusData {
    int dim = 0;
    std::vector<std::string> basis;
    std::vector<Scalar> mu, eta, eps, delta;
    bool delta_given = false;  // delta supplied by the user rather than derived

    const Scalar& m(int a, int b, int c) const { return mu[(static_cast<size_t>(a) * dim + b) * dim + c]; }
    const Scalar& d(int a, int b, int c) const { return delta[(static_cast<size_t>(a) * dim + b) * dim + c]; }
    bool is_exact() const;
};

// g_ab = eps(e_a e_b).
Matrix pairing(const FrobeniusData& a);
Matrix inverse_pairing(const FrobeniusData& a, double tol = kDefaultTol);

// Checks shapes, builds basis labels if missing, and derives delta from the
// inverse pairing when not given. Throws DimensionMismatch, DegeneratePairing.
FrobeniusData make_frobenius(int dim, std::vector<Scalar> mu, std::vector<Scalar> eta, std::vector<Scalar> eps,
                             std::optional<std::vector<Scalar>> delta = std::nullopt,
                             std::vector<std::string> basis = {}, double tol = kDefaultTol);

// Records: associativity, unit, coassociativity, counit, frobenius,
// symmetric, delta_separable, and delta_consistent when delta was given.
Report check_frobenius_axioms(const FrobeniusData& a, double tol = kDefaultTol);

// k[G] from a multiplication table over 0..n-1, with eps(g) = |G| delta_{g,e}
// (the normalisation that makes it Delta-separable). characteristic 0 only;
// p > 0 dividing |G| is BadCharacteristic, any other p is unsupported.
FrobeniusData group_algebra(const std::vector<std::vector<int>>& table, Mode mode = Mode::Exact,
                            int characteristic = 0);
std::vector<std::vector<int>> cyclic_group_table(int n);
std::vector<std::vector<int>> symmetric_group_table(int k);

// M_n(k) in the matrix-unit basis with eps = n * trace.
FrobeniusData matrix_algebra(int n, Mode mode = Mode::Exact);
// The ground field as a one-dimensional algebra.
FrobeniusData trivial_algebra(Mode mode = Mode::Exact);

// eps -> lambda * eps with delta re-derived.
FrobeniusData rescale_counit(const FrobeniusData& a, const Scalar& lambda);
FrobeniusData opposite(const FrobeniusData& a);
FrobeniusData direct_sum(const FrobeniusData& a, const FrobeniusData& b);
FrobeniusData to_mode(const FrobeniusData& a, Mode mode);

bool is_commutative(const FrobeniusData& a, double tol = kDefaultTol);

}  // namespace orb
