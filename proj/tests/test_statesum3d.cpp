#include <cmath>
#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "orb/error.hpp"
#include "orb/statesum3d.hpp"

using namespace orb;

namespace {

Triangulation random_moves_3d(Triangulation t, int steps, std::mt19937_64& rng) {
    const MoveKind kinds[] = {MoveKind::M23, MoveKind::M32, MoveKind::M14, MoveKind::M41};
    for (int s = 0; s < steps; ++s) {
        auto sites = enumerate_oriented_moves(t, kinds[rng() % 4]);
        if (sites.empty()) continue;
        t = apply_pachner_move(t, sites[rng() % sites.size()]);
    }
    return t;
}

FusionData twisted_z2() {
    auto c = builtin_category("vec_zn", {2});
    c.f_ref(1, 1, 1, 1, 0, 0) = Scalar(-1);
    c.fbar_ref(1, 1, 1, 1, 0, 0) = Scalar(-1);
    return c;
}

const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

}  // namespace

TEST_CASE("Z/2 state sums count homomorphisms") {
    auto z2 = builtin_category("vec_zn", {2});
    for (const char* name : {"sphere3", "s2xs1", "rp3"}) {
        auto m = builtin_manifold(name);
        Scalar expect = Scalar::ratio(oracle::z2_hom_count(m), 2);
        CHECK(tv_evaluate_closed(m, z2).identical(expect));
    }
    CHECK(tv_evaluate_closed(builtin_manifold("sphere3"), z2).identical(Scalar::ratio(1, 2)));
    CHECK(tv_evaluate_closed(builtin_manifold("rp3"), z2).identical(Scalar(1)));
    CHECK(oracle::z2_hom_count(builtin_manifold("torus3")) == 8);
}

TEST_CASE("trivial category gives 1") {
    auto t = builtin_category("trivial");
    for (const char* name : {"sphere3", "s2xs1", "rp3"}) CHECK(tv_evaluate_closed(builtin_manifold(name), t).is_one());
}

TEST_CASE("Fibonacci on the sphere") {
    auto fib = builtin_category("fibonacci");
    auto z = tv_evaluate_closed(builtin_manifold("sphere3"), fib);
    CHECK(z.complex().real() == doctest::Approx(1.0 / (1.0 + kGolden * kGolden)).epsilon(1e-12));
    CHECK(std::fabs(z.complex().imag()) < 1e-12);
    CHECK(tv_evaluate_closed(builtin_manifold("s2xs1"), fib).complex().real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a twisted cocycle detects RP3") {
    auto c = twisted_z2();
    CHECK(tv_evaluate_closed(builtin_manifold("rp3"), c).is_zero());
    CHECK(tv_evaluate_closed(builtin_manifold("sphere3"), c).identical(Scalar::ratio(1, 2)));
}

TEST_CASE("3D triangulation independence") {
    std::mt19937_64 rng(21);
    auto s3 = builtin_manifold("sphere3");
    auto z3 = builtin_category("vec_zn", {3});
    auto fib = builtin_category("fibonacci");
    const Scalar ref = tv_evaluate_closed(s3, fib);
    for (int trial = 0; trial < 3; ++trial) {
        auto t = random_moves_3d(s3, 8, rng);
        CHECK(t.euler_characteristic() == 0);
        CHECK(tv_evaluate_closed(t, z3).identical(Scalar::ratio(1, 3)));
        CHECK(distance(tv_evaluate_closed(t, fib), ref) < 1e-12);
    }
    auto r = random_moves_3d(builtin_manifold("rp3"), 4, rng);
    CHECK(tv_evaluate_closed(r, builtin_category("vec_zn", {2})).identical(Scalar(1)));
}

TEST_CASE("mirror conjugates and disjoint union multiplies") {
    std::mt19937_64 rng(5);
    auto fib = builtin_category("fibonacci");
    // A unitary gauge with complex phases keeps Fbar equal to the adjoint of F.
    std::uniform_real_distribution<double> ph(0.0, 6.283185307179586);
    std::vector<Complex> u(8);
    for (auto& x : u) x = std::polar(1.0, ph(rng));
    auto g = gauge_transform(fib, [&](int a, int b, int c) { return Scalar(u[a * 4 + b * 2 + c]); });
    for (const char* name : {"sphere3", "rp3"}) {
        auto m = builtin_manifold(name);
        auto z = tv_evaluate_closed(m, g), w = tv_evaluate_closed(mirror(m), g);
        CHECK(distance(w, z.conj()) < 1e-12);
    }
    auto z3 = builtin_category("vec_zn", {3});
    auto a = builtin_manifold("sphere3"), b = builtin_manifold("s2xs1");
    CHECK(tv_evaluate_closed(disjoint_union(a, b), z3).identical(tv_evaluate_closed(a, z3) * tv_evaluate_closed(b, z3)));
    CHECK(tv_evaluate_closed(mirror(b), z3).identical(tv_evaluate_closed(b, z3)));
}

TEST_CASE("single tetrahedron tensor") {
    auto fib = builtin_category("fibonacci");
    auto ball = builtin_manifold("ball3");
    auto t = evaluate_ball_tensor(ball, fib);
    REQUIRE(t.boundary_edges.size() == 6);
    // Edges in lexicographic order: 01 02 03 12 13 23.
    int nonzero = 0;
    for (int m = 0; m < 64; ++m) {
        int x[6];
        for (int i = 0; i < 6; ++i) x[i] = m >> i & 1;
        const int x01 = x[0], x02 = x[1], x03 = x[2], x12 = x[3], x13 = x[4], x23 = x[5];
        double expect = fib.f(x01, x12, x23, x03, x02, x13).complex().real();
        for (int i = 0; i < 6; ++i) expect *= std::sqrt(fib.d[x[i]].complex().real());
        expect /= std::sqrt(fib.d[x02].complex().real() * fib.d[x13].complex().real());
        auto it = t.values.find(std::vector<int>(x, x + 6));
        double got = it == t.values.end() ? 0.0 : it->second.complex().real();
        CHECK(got == doctest::Approx(expect).epsilon(1e-12));
        nonzero += expect != 0.0;
    }
    CHECK(nonzero == static_cast<int>(t.values.size()));
    auto ones = evaluate_ball_tensor(ball, builtin_category("trivial"));
    CHECK(ones.values.size() == 1);
    CHECK(ones.values.begin()->second.is_one());
}

TEST_CASE("ball tensors glue along a disk") {
    auto z3 = builtin_category("vec_zn", {3});
    auto fib = builtin_category("fibonacci");
    // Three tetrahedra round the edge 13; split off 0123.
    std::map<Vid, Rational> h;
    for (int i = 0; i < 5; ++i) h[i] = Rational(i);
    auto whole = build_triangulation(3, h, {{1, 2, 3, 4}, {0, 1, 3, 4}, {0, 1, 2, 3}}, {1, 1, 1});
    auto left = subcomplex(whole, {2});
    auto right = subcomplex(whole, {0, 1});
    for (const auto& c : {z3, fib}) {
        auto tw = evaluate_ball_tensor(whole, c), tl = evaluate_ball_tensor(left, c), tr = evaluate_ball_tensor(right, c);
        auto pos = [](const BallTensor& t, const Simplex& e) {
            return static_cast<int>(std::find(t.boundary_edges.begin(), t.boundary_edges.end(), e) - t.boundary_edges.begin());
        };
        // The interface is the disk 013 + 123. Its inner edge 13 becomes
        // interior (sqrt(d) from each side); its rim keeps one sqrt(d).
        const std::vector<Simplex> iface{{0, 1}, {0, 3}, {1, 3}, {1, 2}, {2, 3}};
        const std::vector<Simplex> rim{{0, 1}, {0, 3}, {1, 2}, {2, 3}};
        LabelTensor glued;
        for (const auto& [kl, vl] : tl.values)
            for (const auto& [kr, vr] : tr.values) {
                bool match = true;
                for (const auto& e : iface) match = match && kl[pos(tl, e)] == kr[pos(tr, e)];
                if (!match) continue;
                std::vector<int> key;
                for (const auto& e : tw.boundary_edges) {
                    int i = pos(tl, e);
                    key.push_back(i < static_cast<int>(tl.boundary_edges.size()) ? kl[i] : kr[pos(tr, e)]);
                }
                Scalar w = vl * vr;
                for (const auto& e : rim) w /= psi(c, kl[pos(tl, e)]);
                glued[key] += w;
            }
        CHECK(compare_tensors("glue", glued, tw.values, 1e-12).pass);
    }
}

TEST_CASE("ball errors") {
    auto z2 = builtin_category("vec_zn", {2});
    CHECK_THROWS_WITH(evaluate_ball_tensor(builtin_manifold("sphere3"), z2), doctest::Contains("NotABall"));
    std::map<Vid, Rational> h;
    for (int i = 0; i < 8; ++i) h[i] = Rational(i);
    auto two = build_triangulation(3, h, {{0, 1, 2, 3}, {4, 5, 6, 7}}, {1, 1});
    CHECK_THROWS_WITH(evaluate_ball_tensor(two, z2), doctest::Contains("NotABall"));
    CHECK_THROWS_WITH(tv_evaluate_closed(builtin_manifold("ball3"), z2), doctest::Contains("NotClosed"));
    CHECK_THROWS_WITH(tv_evaluate_closed(builtin_manifold("sphere3"), with_phi(z2, Scalar(3))),
                      doctest::Contains("InvalidDatum"));
}

TEST_CASE("all oriented Pachner moves") {
    auto check = [](const FusionData& c, bool exact) {
        auto rep = check_pachner_3d(c);
        int n23 = 0, n14 = 0, nb = 0;
        for (const auto& r : rep.records) {
            if (r.name.rfind("2-3", 0) == 0) ++n23;
            else if (r.name.rfind("1-4", 0) == 0) ++n14;
            else ++nb;
            CHECK(r.pass);
            if (exact) CHECK(r.residual == 0.0);
        }
        CHECK(n23 == 20);
        CHECK(n14 == 10);
        CHECK(nb == 3);
    };
    check(builtin_category("vec_zn", {3}), true);
    check(builtin_category("fibonacci"), false);
    check(twisted_z2(), true);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> num(1, 9);
    auto z3 = builtin_category("vec_zn", {3});
    std::vector<Scalar> u(27);
    for (auto& x : u) x = Scalar::ratio(num(rng), num(rng));
    check(gauge_transform(z3, [&](int a, int b, int c) { return u[a * 9 + b * 3 + c]; }), true);
}

TEST_CASE("a wrong phi breaks only the moves that create a vertex") {
    for (const auto& c : {builtin_category("vec_zn", {3}), builtin_category("fibonacci")}) {
        auto rep = check_pachner_3d(with_phi(c, c.phi + Scalar(1)));
        int bad23 = 0, bad14 = 0, badb = 0;
        for (const auto& r : rep.records) {
            if (r.pass) continue;
            if (r.name.rfind("2-3", 0) == 0) ++bad23;
            else if (r.name.rfind("1-4", 0) == 0) ++bad14;
            else ++badb;
        }
        CHECK(bad23 == 0);
        CHECK(bad14 > 0);
        CHECK(badb == 3);
    }
}
