#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "orb/error.hpp"
#include "orb/tqft2d.hpp"

using namespace orb;

namespace {

Triangulation random_moves(Triangulation t, int steps, std::mt19937_64& rng) {
    const MoveKind kinds[] = {MoveKind::M22, MoveKind::M13, MoveKind::M31};
    for (int s = 0; s < steps; ++s) {
        auto sites = enumerate_oriented_moves(t, kinds[rng() % 3]);
        if (sites.empty()) continue;
        t = apply_pachner_move(t, sites[rng() % sites.size()]);
    }
    return t;
}

SparseMatrix kron(const SparseMatrix& x, const SparseMatrix& y) {
    SparseMatrix z(x.rows * y.rows, x.cols * y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (const auto& [j, a] : x.row[i])
            for (int k = 0; k < y.rows; ++k)
                for (const auto& [l, b] : y.row[k]) z.row[i * y.rows + k].emplace_back(j * y.cols + l, a * b);
    z.normalize();
    return z;
}

}  // namespace

TEST_CASE("ground field gives 1 on every surface") {
    auto k = trivial_algebra();
    for (int g = 0; g <= 3; ++g) CHECK(evaluate_closed_2d(builtin_manifold("surface_genus", {g}), k).is_one());
}

TEST_CASE("group algebras count homomorphisms") {
    for (int which = 0; which < 3; ++which) {
        auto table = which == 0 ? cyclic_group_table(2) : which == 1 ? cyclic_group_table(3) : symmetric_group_table(3);
        auto a = group_algebra(table);
        const long order = static_cast<long>(table.size());
        for (int g = 0; g <= 2; ++g) {
            Scalar z = evaluate_closed_2d(builtin_manifold("surface_genus", {g}), a);
            CHECK(z.identical(Scalar(oracle::surface_hom_count(table, g)) / Scalar(order)));
        }
    }
    // Bare state sum: |G|^(chi - 1) |Hom|.
    auto z2 = group_algebra(cyclic_group_table(2));
    Scalar raw = evaluate_closed_2d(builtin_manifold("torus2"), z2, Normalization::StateSum);
    CHECK(raw.identical(Scalar::parse("1/2") * Scalar(4)));
}

TEST_CASE("matrix algebra gives an Euler theory") {
    // A block M_n with its separable counit sums to n^chi; the normalisation
    // divides by (n^2)^chi, leaving n^-chi.
    auto m2 = matrix_algebra(2);
    for (int g = 0; g <= 2; ++g) {
        const int chi = 2 - 2 * g;
        auto z = evaluate_closed_2d(builtin_manifold("surface_genus", {g}), m2);
        CHECK(z.identical(Scalar::parse(chi >= 0 ? "1/" + std::to_string(1 << chi) : std::to_string(1 << -chi))));
        auto raw = evaluate_closed_2d(builtin_manifold("surface_genus", {g}), m2, Normalization::StateSum);
        CHECK(raw.identical(Scalar::parse(chi >= 0 ? std::to_string(1 << chi) : "1/" + std::to_string(1 << -chi))));
    }
}

TEST_CASE("triangulation independence") {
    std::mt19937_64 rng(7);
    auto s3 = group_algebra(symmetric_group_table(3));
    auto base = builtin_manifold("torus2");
    Scalar ref = evaluate_closed_2d(base, s3);
    for (int trial = 0; trial < 3; ++trial) {
        auto t = random_moves(base, 6, rng);
        CHECK(evaluate_closed_2d(t, s3).identical(ref));
    }
    auto f = to_mode(s3, Mode::Float);
    auto g2 = random_moves(builtin_manifold("surface_genus", {2}), 8, rng);
    CHECK(evaluate_closed_2d(g2, f).abs() == doctest::Approx(oracle::surface_hom_count(symmetric_group_table(3), 2) / 6.0));
}

TEST_CASE("closed evaluation errors") {
    auto z2 = group_algebra(cyclic_group_table(2));
    CHECK_THROWS_WITH(evaluate_closed_2d(builtin_manifold("disk", {3}), z2), doctest::Contains("NotClosed"));
    auto bad = rescale_counit(z2, Scalar::parse("1/2"));
    CHECK_THROWS_WITH(evaluate_closed_2d(builtin_manifold("torus2"), bad), doctest::Contains("InvalidDatum"));
}

TEST_CASE("network Euler characteristics") {
    CHECK(cylinder_network(3, 2).euler_characteristic() == 0);
    CHECK(cup_network(1).euler_characteristic() == 1);
    CHECK(cap_network(4).euler_characteristic() == 1);
    CHECK(pants_network(1, 2, 3).euler_characteristic() == -1);
}

TEST_CASE("cylinders are idempotents") {
    auto s3 = group_algebra(symmetric_group_table(3));
    for (int k = 1; k <= 3; ++k) {
        auto p = evaluate_network(cylinder_network(k, k), s3);
        CHECK(max_distance(p * p, p) == 0.0);
        CHECK(rank(p, 0.0) == 3);
    }
    auto pt = evaluate_bordism_2d(builtin_manifold("annulus", {3}), s3);
    CHECK(max_distance(pt * pt, pt) == 0.0);
    CHECK(rank(pt, 0.0) == 3);
}

TEST_CASE("disks are invariant states") {
    auto z3 = group_algebra(cyclic_group_table(3));
    auto p = evaluate_bordism_2d(builtin_manifold("annulus", {4}), z3);
    auto d = evaluate_bordism_2d(builtin_manifold("disk", {4}), z3);
    CHECK(max_distance(p * d, d) == 0.0);
    auto pz = evaluate_network(cylinder_network(2, 2), z3);
    auto cup = evaluate_network(cup_network(2), z3);
    CHECK(max_distance(pz * cup, cup) == 0.0);
}

TEST_CASE("pants absorb idempotents") {
    for (auto a : {group_algebra(symmetric_group_table(3)), matrix_algebra(2)}) {
        auto p = evaluate_network(cylinder_network(1, 1), a);
        auto pants = evaluate_network(pants_network(1, 1, 1), a);
        CHECK(max_distance(p * pants * kron(p, p), p * pants) == 0.0);
        auto p2 = evaluate_network(cylinder_network(2, 2), a);
        auto pants2 = evaluate_network(pants_network(1, 2, 2), a);
        CHECK(max_distance(p2 * pants2 * kron(p, p2), p2 * pants2) == 0.0);
    }
}

TEST_CASE("gluing is composition") {
    auto s3 = group_algebra(symmetric_group_table(3));
    auto a = builtin_manifold("annulus", {3});
    auto glued = glue_along_boundary(a, a, "out", "in");
    auto za = evaluate_bordism_2d(a, s3);
    CHECK(max_distance(evaluate_bordism_2d(glued, s3), za * za) == 0.0);
    // Capping a cylinder with a disk gives the disk.
    auto d = builtin_manifold("disk", {3});
    auto capped = glue_along_boundary(d, rename_boundary(a, {{"in", "in0"}}), "out", "in0");
    CHECK(max_distance(evaluate_bordism_2d(capped, s3), za * evaluate_bordism_2d(d, s3)) == 0.0);
}

TEST_CASE("state space dimensions") {
    CHECK(orbifold_state_space(2, trivial_algebra()).dim() == 1);
    for (int n = 2; n <= 4; ++n) CHECK(orbifold_state_space(2, group_algebra(cyclic_group_table(n))).dim() == n);
    auto s = orbifold_state_space(2, group_algebra(symmetric_group_table(3)));
    CHECK(s.dim() == oracle::conjugacy_class_count(symmetric_group_table(3)));
    CHECK(orbifold_state_space(1, matrix_algebra(2)).dim() == 1);
    // The factored projector is the cylinder evaluated directly.
    for (int k = 1; k <= 3; ++k) {
        auto a = group_algebra(symmetric_group_table(3));
        auto st = orbifold_state_space(k, a);
        CHECK(max_distance(st.projector, evaluate_network(cylinder_network(k, k), a)) == 0.0);
        CHECK(max_distance(st.expand * ((st.collapse * st.expand) * st.collapse), st.projector) == 0.0);
    }
}

TEST_CASE("point insertion algebra of S3 is its centre") {
    auto a = group_algebra(symmetric_group_table(3));
    auto alg = point_insertion_algebra(a);
    REQUIRE(alg.dim == 3);
    const int r = alg.dim;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) CHECK(alg.c(i, j, k).identical(alg.c(j, i, k)));
    // The label map is multiplicative into A and lands in the centre.
    const int n = a.dim;
    auto z = oracle::center_basis(a);
    CHECK(z.cols == 3);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Matrix prod(n, 1), via(n, 1);
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                    for (int k = 0; k < n; ++k) prod(k, 0) += alg.to_algebra(x, i) * alg.to_algebra(y, j) * a.m(x, y, k);
            for (int k = 0; k < r; ++k)
                for (int x = 0; x < n; ++x) via(x, 0) += alg.c(i, j, k) * alg.to_algebra(x, k);
            CHECK(max_distance(prod, via) == 0.0);
        }
}

TEST_CASE("local Pachner checks") {
    auto z3 = group_algebra(cyclic_group_table(3));
    auto rep = check_pachner_2d(z3);
    CHECK(rep.records.size() == 12 + 8 + 8);
    CHECK(rep.all_pass());
    CHECK(rep.max_residual() == 0.0);
    auto bad = check_pachner_2d(rescale_counit(z3, Scalar::parse("1/3")));
    // Only the moves that create or remove a bubble see the separability defect.
    std::map<std::string, int> failing;
    for (const auto& r : bad.records)
        if (!r.pass) failing[r.name.substr(0, 3)]++;
    CHECK(failing["1-3"] > 0);
    CHECK(failing["3-1"] > 0);
    CHECK(failing["2-2"] == 0);
    CHECK(check_pachner_2d(trivial_algebra()).all_pass());
    auto on_sphere = check_pachner_2d(group_algebra(symmetric_group_table(3)), builtin_manifold("sphere2"));
    CHECK(on_sphere.all_pass());
}
