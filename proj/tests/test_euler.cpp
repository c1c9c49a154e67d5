#include <random>

#include "doctest.h"
#include "orb/error.hpp"
#include "orb/euler.hpp"
#include "support.hpp"

using namespace orb;

namespace {

long chi_tilde_total(const Triangulation& t) { return euler_characteristics(t).at(0).chi_tilde; }

}  // namespace

TEST_CASE("closed surfaces") {
    for (int g = 0; g <= 3; ++g) {
        auto e = euler_characteristics(builtin_manifold("surface_genus", {g}));
        CHECK(e.size() == 1);
        CHECK(e[0].chi == 2 - 2 * g);
        CHECK(e[0].chi_tilde == 2 * (2 - 2 * g));
    }
}

TEST_CASE("disk, interval and punctures") {
    auto d = builtin_manifold("disk", {4});
    auto e = euler_characteristics(d);
    CHECK(e[0].chi == 1);
    CHECK(e[0].chi_tilde == 2);

    // A chord through the centre splits the disk; the chord is an interval
    // with both ends on the boundary.
    StratifiedComplex split(d, {StratumSpec{2, "L", {{0, 1, 2}, {0, 2, 3}}},
                                StratumSpec{2, "R", {{0, 3, 4}, {0, 4, 1}}},
                                StratumSpec{1, "chord", {{1, 0}, {0, 3}}}});
    auto es = euler_characteristics(split);
    CHECK(es[2].chi == 1);
    CHECK(es[2].chi_tilde == 0);
    // Each open half disk meets the boundary in an open arc: 2*1 - 1.
    CHECK(es[0].chi_tilde == 1);
    CHECK(es[1].chi_tilde == 1);
    CHECK(es[0].chi_tilde + es[1].chi_tilde + es[2].chi_tilde == e[0].chi_tilde);

    // Removing the centre: chi~(X minus p) = chi~(X) + 2 E_2 with E_2 = chi(S^1) - 1.
    StratifiedComplex punctured(d, {StratumSpec{2, "D", d.simplices()}, StratumSpec{0, "p", {{0}}}});
    auto ep = euler_characteristics(punctured);
    CHECK(ep[0].chi_tilde == e[0].chi_tilde + 2 * (0 - 1));
    CHECK(ep[0].chi == 0);

    // Solid ball with an interior vertex, E_3 = chi(S^2) - 1.
    auto ball = builtin_manifold("ball3");
    auto coned = apply_pachner_move(ball, enumerate_oriented_moves(ball, MoveKind::M14)[0]);
    Vid centre = coned.max_vertex_id();
    CHECK(euler_characteristics(coned)[0].chi_tilde == 0);
    StratifiedComplex pb(coned, {StratumSpec{3, "B", coned.simplices()}, StratumSpec{0, "p", {{centre}}}});
    auto eb = euler_characteristics(pb);
    CHECK(eb[0].chi_tilde == 0 + 2 * (2 - 1));
    CHECK(eb[0].chi == 2);
}

TEST_CASE("invalid stratifications") {
    auto d = builtin_manifold("disk", {4});
    auto code = [&](std::vector<StratumSpec> s) {
        try {
            StratifiedComplex x(d, std::move(s));
        } catch (const Error& e) {
            return e.code();
        }
        return std::string();
    };
    CHECK(code({StratumSpec{2, "A", {{0, 1, 2}, {0, 3, 4}}}, StratumSpec{2, "B", {{0, 2, 3}, {0, 4, 1}}}}) ==
          "AmbiguousStratum");
    CHECK(code({StratumSpec{2, "A", {{0, 1, 2}, {0, 3, 4}}}, StratumSpec{2, "B", {{0, 2, 3}, {0, 4, 1}}},
                StratumSpec{1, "star", {{0, 1}, {0, 2}, {0, 3}, {0, 4}}}}) == "DisconnectedStratum");
    CHECK(code({StratumSpec{2, "A", {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}}}}) == "BadStratum");
    CHECK(code({StratumSpec{2, "A", d.simplices()}, StratumSpec{2, "B", {{0, 1, 2}}}}) == "AmbiguousStratum");
}

TEST_CASE("Euler TQFT values") {
    EulerWeights w{{{1, Scalar(3)}, {2, Scalar::parse("5/7")}}};
    auto cyl = builtin_manifold("annulus", {4});
    CHECK(z_euler_evaluate(StratifiedComplex::trivial(cyl), w).is_one());
    for (int g = 0; g <= 3; ++g) {
        auto s = builtin_manifold("surface_genus", {g});
        CHECK(z_euler_evaluate(StratifiedComplex::trivial(s), w).identical(Scalar::parse("5/7").pow(2 * (2 - 2 * g))));
    }
    EulerWeights bad{{{2, Scalar(0)}}};
    CHECK_THROWS_WITH_AS(z_euler_evaluate(StratifiedComplex::trivial(cyl), bad), doctest::Contains("NonInvertibleWeight"),
                         Error);
}

TEST_CASE("additivity under random splits") {
    std::mt19937_64 rng(20261014);
    EulerWeights w{{{2, Scalar::parse("3/2")}}};
    int done = 0, attempts = 0;
    while (done < 100 && attempts < 2000) {
        ++attempts;
        auto s = builtin_manifold("surface_genus", {static_cast<int>(rng() % 4)});
        auto region = support::random_region(s, rng);
        std::vector<char> in(s.num_simplices(), 0);
        for (int i : region) in[i] = 1;
        std::vector<int> rest;
        for (int i = 0; i < s.num_simplices(); ++i)
            if (!in[i]) rest.push_back(i);
        if (rest.empty()) continue;
        try {
            auto a = subcomplex(s, region), b = subcomplex(s, rest);
            const long ta = chi_tilde_total(a), tb = chi_tilde_total(b);
            CHECK(ta + tb == chi_tilde_total(s));
            auto za = z_euler_evaluate(StratifiedComplex::trivial(a), w);
            auto zb = z_euler_evaluate(StratifiedComplex::trivial(b), w);
            CHECK((za * zb).identical(z_euler_evaluate(StratifiedComplex::trivial(s), w)));
            if (a.boundary().size() == 1) {
                auto g = glue_along_boundary(a, b, "b0", "b0");
                CHECK(g.euler_characteristic() == s.euler_characteristic());
            }
            ++done;
        } catch (const Error& e) {
            // Pinched or disconnected pieces; draw again.
            if (e.code() != "NonManifold" && e.code() != "DisconnectedStratum") throw;
        }
    }
    CHECK(done == 100);
}
