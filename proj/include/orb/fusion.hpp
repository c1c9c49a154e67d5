#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "orb/report.hpp"
#include "orb/scalar.hpp"

namespace orb {

// Multiplicity-free fusion data. Labels are 0..n-1.
//
// N(a,b,c) = 1 when c occurs in a (x) b. F(a,b,c,d,e,f) is the matrix entry
// [F^{abc}_d]_{e,f} taking the basis ((ab)_e c)_d to (a (bc)_f)_d; it is
// nonzero only when N(a,b,e) N(e,c,d) N(b,c,f) N(a,f,d) = 1. Fbar uses the
// same argument order and holds the inverse block:
//   sum_f F(a,b,c,d,e,f) Fbar(a,b,c,d,e',f) = delta_{e,e'}.
// psi_a^2 = d_a; phi is the weight of a 3-stratum.
struct FusionData {
    int n = 0;
    std::vector<std::string> labels;
    int unit = 0;
    std::vector<int> dual;
    std::vector<int> fusion;  // n^3 entries in {0, 1}
    std::vector<Scalar> F, Fbar;  // n^6 entries
    std::vector<Scalar> d;
    Scalar phi;

    static size_t index6(int a, int b, int c, int d, int e, int f, int n) {
        return ((((static_cast<size_t>(a) * n + b) * n + c) * n + d) * n + e) * n + f;
    }
    int N(int a, int b, int c) const { return fusion[(static_cast<size_t>(a) * n + b) * n + c]; }
    int& N_ref(int a, int b, int c) { return fusion[(static_cast<size_t>(a) * n + b) * n + c]; }
    const Scalar& f(int a, int b, int c, int dd, int e, int ff) const { return F[index6(a, b, c, dd, e, ff, n)]; }
    const Scalar& fbar(int a, int b, int c, int dd, int e, int ff) const {
        return Fbar[index6(a, b, c, dd, e, ff, n)];
    }
    Scalar& f_ref(int a, int b, int c, int dd, int e, int ff) { return F[index6(a, b, c, dd, e, ff, n)]; }
    Scalar& fbar_ref(int a, int b, int c, int dd, int e, int ff) { return Fbar[index6(a, b, c, dd, e, ff, n)]; }
    bool admissible(int a, int b, int c, int dd, int e, int ff) const {
        return N(a, b, e) && N(e, c, dd) && N(b, c, ff) && N(a, ff, dd);
    }
    bool is_exact() const;
};

// Empty data of size n: N, F, Fbar zero, all d = 1, phi = n.
FusionData empty_fusion_data(int n);

// Records: shapes, unit, duals, associativity, support (F and Fbar vanish off
// admissible blocks), inverse (F and Fbar are inverse on each block),
// invertible_weights (every d_a and phi nonzero).
Report validate_fusion_data(const FusionData& c, double tol = kDefaultTol);

// Fills Fbar with the blockwise inverse of F. Throws Singular.
void recompute_fbar(FusionData& c, double tol = kDefaultTol);

// The ten defining constraints: pentagon, lens_1..lens_6, bubble_1..bubble_3.
// Throws InvalidFusionData if validate_fusion_data fails.
Report check_special_orbifold_datum(const FusionData& c, double tol = kDefaultTol);

// trivial, vec_zn {N} (exact unless mode is Float), fibonacci (always float).
FusionData builtin_category(const std::string& name, const std::vector<int>& params = {},
                            Mode mode = Mode::Exact);
std::vector<std::string> builtin_category_names();

// Rescales the basis vector of each fusion space V^{ab}_c by u(a,b,c).
FusionData gauge_transform(const FusionData& c, const std::function<Scalar(int, int, int)>& u);
// Adds delta to one F entry and recomputes Fbar.
FusionData perturb_f(const FusionData& c, const std::array<int, 6>& entry, const Scalar& delta);
FusionData with_phi(const FusionData& c, const Scalar& phi);
FusionData to_mode(const FusionData& c, Mode mode);

// psi_a = sqrt(d_a): positive root for positive reals, principal otherwise.
Scalar psi(const FusionData& c, int a);

}  // namespace orb
