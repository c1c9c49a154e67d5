#pragma once

#include <array>
#include <string>
#include <vector>

#include "orb/frob.hpp"
#include "orb/linalg.hpp"
#include "orb/mesh.hpp"
#include "orb/report.hpp"

namespace orb {

// An oriented surface presented as triangles glued along edges. Each
// triangle lists its three sides counterclockwise; a side records the edge
// and whether the edge's own orientation agrees with the counterclockwise
// traversal. Interior edges occur in two sides (once each way); boundary
// edges occur once and carry a free index. Vertices are implicit.
struct Side {
    int edge;
    bool fwd;
};

struct Network2D {
    int num_edges = 0;
    std::vector<std::array<Side, 3>> triangles;
    std::vector<int> out_edges;  // free indices, row index of the bordism matrix
    std::vector<int> in_edges;   // free indices, column index

    int add_edge() { return num_edges++; }
    // Euler characteristic of the underlying surface (vertices recovered by
    // identifying triangle corners along edges).
    long euler_characteristic() const;
};

enum class Normalization {
    Orbifold,  // state sum times the Euler weight (dim A)^(-chi): the orbifold theory
    StateSum,  // bare contraction of the triangle tensors
};

// Z(M) as a map from the in-edge labels to the out-edge labels: rows are
// out multi-indices, columns in multi-indices, first listed edge most
// significant. Triangles contribute C_abc = eps(mu(mu(a,b),c)); interior
// edges and in-edges are contracted with the inverse pairing, out-edges keep
// the lower index.
SparseMatrix evaluate_network(const Network2D& net, const FrobeniusData& a,
                              Normalization norm = Normalization::Orbifold);

// A boundary component read as a cyclic word of edges, starting at its
// lowest vertex. Out-circles follow the orientation induced from the
// surface, in-circles the opposite one, so that gluing an out-circle to an
// in-circle matches the words letter by letter.
struct BoundaryCircle {
    std::string name;
    std::vector<Simplex> edges;
};
BoundaryCircle boundary_circle(const Triangulation& t, const std::string& name, bool incoming);

Network2D network_from_triangulation(const Triangulation& t, const std::vector<std::string>& in_names,
                                     const std::vector<std::string>& out_names);

// Closed surfaces. Throws NotClosed, InvalidDatum (axioms fail).
Scalar evaluate_closed_2d(const Triangulation& m, const FrobeniusData& a,
                          Normalization norm = Normalization::Orbifold, double tol = kDefaultTol);

// Bordisms: by default components whose name starts with "in" are incoming
// (sorted by name) and the rest outgoing.
SparseMatrix evaluate_bordism_2d(const Triangulation& m, const FrobeniusData& a,
                                 std::vector<std::string> in_names = {}, std::vector<std::string> out_names = {},
                                 Normalization norm = Normalization::Orbifold, double tol = kDefaultTol);

// Standard networks on circles with k edges (k >= 1 allowed).
Network2D cylinder_network(int k_in, int k_out);
Network2D cup_network(int k);    // disk, empty -> circle
Network2D cap_network(int k);    // disk, circle -> empty
Network2D pants_network(int k1, int k2, int k_out);

struct StateSpace {
    int circle_size = 0;
    long ambient_dim = 0;
    SparseMatrix projector;  // the cylinder idempotent
    SparseMatrix expand;     // cylinder from the one-edge circle to this one
    SparseMatrix collapse;   // and back; projector = expand * collapse
    SparseMatrix basis;      // independent columns of the projector spanning its image
    int dim() const { return basis.cols; }
};
StateSpace orbifold_state_space(int k, const FrobeniusData& a, double tol = kDefaultTol);

// Algebra of point insertions on the one-edge circle: invariant states Y =
// im P with the product given by the pair of pants and the unit by the cup.
struct PointAlgebra {
    int dim = 0;
    Matrix basis;                   // n x dim, invariant states (lower index)
    std::vector<Scalar> structure;  // c[(i*dim + j)*dim + k]: y_i y_j = sum_k c_ijk y_k
    std::vector<Scalar> unit;       // coordinates of the unit
    Matrix to_algebra;              // n x dim, the point-defect label in A of each basis state
    const Scalar& c(int i, int j, int k) const { return structure[(static_cast<size_t>(i) * dim + j) * dim + k]; }
};
PointAlgebra point_insertion_algebra(const FrobeniusData& a, double tol = kDefaultTol);

// Every oriented 2-2 and 1-3 site of `base` (or, without a base, one
// representative of every oriented class): both sides of the move are
// evaluated as tensors of their boundary edges and compared. One record per
// oriented class, named by its template key.
Report check_pachner_2d(const FrobeniusData& a, const Triangulation& base, double tol = kDefaultTol);
Report check_pachner_2d(const FrobeniusData& a, double tol = kDefaultTol);

}  // namespace orb
