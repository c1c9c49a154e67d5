#include <cmath>
#include <memory>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "orb/error.hpp"
#include "orb/fusion.hpp"
#include "orb/statesum3d.hpp"

using namespace orb;

namespace {

int failing(const Report& r) {
    int k = 0;
    for (const auto& x : r.records) k += !x.pass;
    return k;
}

// Random nonzero gauge on every fusion space.
std::function<Scalar(int, int, int)> random_gauge(const FusionData& c, std::mt19937_64& rng, bool exact) {
    auto table = std::make_shared<std::vector<Scalar>>(static_cast<size_t>(c.n) * c.n * c.n);
    std::uniform_int_distribution<int> num(1, 7);
    std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
    for (auto& x : *table) {
        if (exact) x = Scalar::ratio(num(rng) * (rng() % 2 ? 1 : -1), num(rng));
        else x = Scalar(std::polar(0.5 + phase(rng) / 6.0, phase(rng)));
    }
    const int n = c.n;
    return [table, n](int a, int b, int x) { return (*table)[(static_cast<size_t>(a) * n + b) * n + x]; };
}

}  // namespace

TEST_CASE("builtin categories are well formed") {
    for (auto [name, params] : std::vector<std::pair<std::string, std::vector<int>>>{
             {"trivial", {}}, {"vec_zn", {2}}, {"vec_zn", {3}}, {"vec_zn", {5}}, {"fibonacci", {}}}) {
        auto c = builtin_category(name, params);
        CHECK(validate_fusion_data(c).all_pass());
    }
    auto t = builtin_category("trivial");
    CHECK(t.n == 1);
    CHECK(t.phi.is_one());
    auto z3 = builtin_category("vec_zn", {3});
    CHECK(z3.n == 3);
    CHECK(z3.phi.identical(Scalar(3)));
    CHECK(z3.is_exact());
    CHECK_THROWS_WITH(builtin_category("ising"), doctest::Contains("UnknownName"));
}

TEST_CASE("Fibonacci F agrees with a numerically solved pentagon") {
    auto sol = oracle::solve_fibonacci_pentagon();
    REQUIRE(sol.residual < 1e-12);
    auto fib = builtin_category("fibonacci");
    CHECK(fib.f(1, 1, 1, 1, 0, 0).complex().real() == doctest::Approx(sol.p).epsilon(1e-12));
    CHECK(fib.f(1, 1, 1, 1, 1, 1).complex().real() == doctest::Approx(sol.s).epsilon(1e-12));
    CHECK(std::fabs(fib.f(1, 1, 1, 1, 0, 1).complex().real()) == doctest::Approx(std::fabs(sol.q)).epsilon(1e-12));
    // The loop value is the inverse of the (1,1) entry.
    CHECK(fib.d[1].complex().real() == doctest::Approx(1.0 / sol.p).epsilon(1e-12));
}

TEST_CASE("validation catches broken fusion rules") {
    // Dropping tau from tau x tau leaves the Z/2 rules, which are
    // associative; the old F entries then sit off the admissible support.
    auto fib = builtin_category("fibonacci");
    fib.N_ref(1, 1, 1) = 0;
    auto rep = validate_fusion_data(fib);
    CHECK(rep.at("associativity").pass);
    CHECK_FALSE(rep.at("support").pass);
    CHECK_THROWS_WITH(check_special_orbifold_datum(fib), doctest::Contains("InvalidFusionData"));
    auto z3 = builtin_category("vec_zn", {3});
    z3.N_ref(1, 1, 2) = 0;
    z3.N_ref(1, 1, 0) = 1;
    CHECK_FALSE(validate_fusion_data(z3).at("associativity").pass);
    auto z2 = builtin_category("vec_zn", {2});
    z2.fbar_ref(1, 1, 1, 1, 0, 0) = Scalar(2);
    CHECK_FALSE(validate_fusion_data(z2).at("inverse").pass);
    auto zero = builtin_category("vec_zn", {2});
    zero.phi = Scalar(0);
    CHECK_FALSE(validate_fusion_data(zero).at("invertible_weights").pass);
}

TEST_CASE("group categories pass the ten constraints exactly") {
    for (int n : {1, 2, 3, 4}) {
        auto rep = check_special_orbifold_datum(builtin_category("vec_zn", {n}));
        CHECK(rep.records.size() == 10);
        CHECK(rep.all_pass());
        CHECK(rep.max_residual() == 0.0);
        for (const auto& r : rep.records) CHECK(r.exact);
    }
}

TEST_CASE("Fibonacci passes within tolerance and a perturbation is caught") {
    auto fib = builtin_category("fibonacci");
    auto rep = check_special_orbifold_datum(fib);
    CHECK(rep.all_pass());
    CHECK(rep.max_residual() < 1e-12);
    auto bad = perturb_f(fib, {1, 1, 1, 1, 1, 1}, Scalar::real(1e-3));
    auto b = check_special_orbifold_datum(bad);
    const auto& pent = b.at("pentagon");
    CHECK_FALSE(pent.pass);
    CHECK(pent.residual > 1e-5);
    CHECK(pent.witness.size() == 9);
    for (int i = 1; i <= 3; ++i) CHECK(b.at("bubble_" + std::to_string(i)).pass);
}

TEST_CASE("constraints are gauge invariant") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 3; ++trial) {
        auto z3 = builtin_category("vec_zn", {3});
        auto g = gauge_transform(z3, random_gauge(z3, rng, true));
        CHECK(validate_fusion_data(g).all_pass());
        auto rep = check_special_orbifold_datum(g);
        CHECK(rep.all_pass());
        CHECK(rep.max_residual() == 0.0);
        auto fib = builtin_category("fibonacci");
        auto gf = gauge_transform(fib, random_gauge(fib, rng, false));
        CHECK(check_special_orbifold_datum(gf).all_pass());
    }
}

TEST_CASE("phi is pinned by the bubble") {
    for (auto c : {builtin_category("vec_zn", {3}), builtin_category("fibonacci")}) {
        Scalar sum;
        for (const auto& x : c.d) sum += x * x;
        CHECK(distance(sum, c.phi) < 1e-12);
        for (const Scalar& off : {Scalar::ratio(1, 100), Scalar(1), Scalar(-1) * sum / Scalar(2)}) {
            auto rep = check_special_orbifold_datum(with_phi(c, c.phi + off));
            for (int i = 1; i <= 3; ++i) CHECK_FALSE(rep.at("bubble_" + std::to_string(i)).pass);
            CHECK(rep.at("pentagon").pass);
        }
    }
}

TEST_CASE("twisted Z/2 data passes and a lone rescaling does not") {
    auto c = builtin_category("vec_zn", {2});
    c.f_ref(1, 1, 1, 1, 0, 0) = Scalar(-1);
    c.fbar_ref(1, 1, 1, 1, 0, 0) = Scalar(-1);
    CHECK(check_special_orbifold_datum(c).all_pass());
    // Rescaling a single entry keeps F and Fbar inverse but breaks the constraints.
    auto z3 = builtin_category("vec_zn", {3});
    z3.f_ref(1, 1, 1, 0, 2, 2) = Scalar(2);
    z3.fbar_ref(1, 1, 1, 0, 2, 2) = Scalar::ratio(1, 2);
    CHECK(validate_fusion_data(z3).all_pass());
    auto rep = check_special_orbifold_datum(z3);
    CHECK(failing(rep) > 0);
}

TEST_CASE("psi uses the positive root") {
    auto fib = builtin_category("fibonacci");
    CHECK(psi(fib, 1).complex().real() == doctest::Approx(std::sqrt((1 + std::sqrt(5.0)) / 2)));
    CHECK(psi(builtin_category("vec_zn", {2}), 1).is_one());
    CHECK(psi(builtin_category("vec_zn", {2}), 1).is_exact());
}
