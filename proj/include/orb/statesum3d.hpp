#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "orb/fusion.hpp"
#include "orb/mesh.hpp"
#include "orb/report.hpp"

namespace orb {

// A local 3D cell complex to be evaluated with fusion data. It need not be
// simplicial: two tetrahedra may share several faces, or an edge may appear
// twice. Each tetrahedron lists its edge variables in the vertex order
// 0<1<2<3 as (x01, x12, x23, x03, x02, x13) and carries the weight
//   sign +: F(x01,x12,x23,x03,x02,x13) / sqrt(d_x02 d_x13)
//   sign -: Fbar(same arguments) / sqrt(d_x02 d_x13).
// Edge e contributes psi^{psi_power[e]}; faces impose N(x_ij, x_jk, x_ik);
// the whole value is scaled by phi^{-interior_vertices}.
struct TetComplex {
    struct Tet {
        std::array<int, 6> edge;
        int sign = 1;
    };
    int num_edges = 0;
    std::vector<Tet> tets;
    std::vector<std::array<int, 3>> faces;
    std::vector<int> psi_power;
    std::vector<std::pair<int, int>> equal;  // pairs of edges forced to carry the same label
    int interior_vertices = 0;
    std::vector<int> free_edges;

    int add_edge(int power) {
        psi_power.push_back(power);
        return num_edges++;
    }
};

using LabelTensor = std::map<std::vector<int>, Scalar>;

// Nonzero entries keyed by labels of free_edges, in that order.
LabelTensor evaluate_complex(const TetComplex& x, const FusionData& c);

// Entrywise comparison of two tensors over the same free indices.
CheckRecord compare_tensors(const std::string& name, const LabelTensor& lhs, const LabelTensor& rhs, double tol);

// One free label per boundary edge. Boundary triangles carry no label in the
// multiplicity-free setting, so they appear only through admissibility.
struct BallTensor {
    std::vector<Simplex> boundary_edges;  // lexicographic
    LabelTensor values;
};

// The tetrahedron wiring above, with interior edges weighted by d, boundary
// edges by sqrt(d), and phi^{-1} per interior vertex. Throws NotABall.
BallTensor evaluate_ball_tensor(const Triangulation& b, const FusionData& c);
TetComplex ball_complex(const Triangulation& b);

// Throws NotClosed, InvalidDatum.
Scalar tv_evaluate_closed(const Triangulation& m, const FusionData& c, double tol = kDefaultTol);

// Records one entry per oriented 2-3 template, per oriented 1-4 template
// (keyed by template key) and per bubble variant.
Report check_pachner_3d(const FusionData& c, double tol = kDefaultTol);

// Both sides of the bubble move in each of its three orientation variants
// (the inner 3-stratum below, between or above the two outer ones).
std::pair<TetComplex, TetComplex> bubble_move(int variant);
// Both sides of the lens move whose doubled edge joins the vertices of rank
// i < j in the common vertex order.
std::pair<TetComplex, TetComplex> lens_move(int i, int j);

}  // namespace orb
