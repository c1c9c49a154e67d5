#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orb/scalar.hpp"

namespace orb {

using Vid = int;
// A simplex is stored with its vertices sorted by increasing height, so the
// position of a vertex is its rank inside the simplex.
using Simplex = std::vector<Vid>;

enum class MoveKind { M22, M13, M31, M23, M32, M14, M41 };

std::string to_string(MoveKind k);
MoveKind parse_move_kind(const std::string& s);
int move_dimension(MoveKind k);
bool is_expanding(MoveKind k);

struct MoveSite {
    MoveKind kind;
    std::vector<Simplex> simplices;  // configuration being replaced
    std::vector<int> signs;          // their orientation signs
    std::optional<Rational> new_height;
    int height_class = -1;           // rank of the inserted vertex among the move's vertices
};

class Triangulation {
public:
    int dim() const { return dim_; }
    const std::map<Vid, Rational>& heights() const { return heights_; }
    const Rational& height(Vid v) const;
    const std::vector<Simplex>& simplices() const { return simplices_; }
    const std::vector<int>& signs() const { return signs_; }
    const std::map<std::string, std::vector<Simplex>>& boundary() const { return boundary_; }

    int num_vertices() const { return static_cast<int>(heights_.size()); }
    int num_simplices() const { return static_cast<int>(simplices_.size()); }
    bool is_closed() const { return boundary_.empty(); }
    Vid max_vertex_id() const;

    // Index of a top simplex (given in any vertex order), or -1.
    int find(const Simplex& s) const;
    Simplex sorted(Simplex s) const;

    // All k-dimensional faces, each sorted by height, in lexicographic order.
    std::vector<Simplex> faces(int k) const;
    std::vector<long> f_vector() const;
    long euler_characteristic() const;

    // Boundary facets with the orientation sign induced from the manifold.
    std::vector<std::pair<Simplex, int>> oriented_boundary(const std::string& name) const;
    std::vector<Simplex> all_boundary_facets() const;
    std::set<Vid> boundary_vertices() const;

private:
    friend Triangulation build_triangulation(int, std::map<Vid, Rational>, std::vector<Simplex>, std::vector<int>,
                                             std::map<std::string, std::vector<Simplex>>);
    int dim_ = 0;
    std::map<Vid, Rational> heights_;
    std::vector<Simplex> simplices_;
    std::vector<int> signs_;
    std::map<std::string, std::vector<Simplex>> boundary_;
    std::map<Simplex, int> index_;
};

// Orientation sign induced on the face obtained by deleting the vertex at
// rank i of a sorted simplex with sign s.
inline int induced_face_sign(int s, int i) { return (i % 2 == 0) ? s : -s; }

// Validates and builds. Vertex lists may be given in any order; they are
// sorted by height. When `boundary` is empty the boundary components are
// detected and named b0, b1, ... in a deterministic order.
Triangulation build_triangulation(int dim, std::map<Vid, Rational> heights, std::vector<Simplex> simplices,
                                  std::vector<int> signs,
                                  std::map<std::string, std::vector<Simplex>> boundary = {});

// Signs making adjacent simplices compatible (first simplex of each
// component positive). Throws NonOrientable if impossible.
std::vector<int> orient_signs(int dim, const std::map<Vid, Rational>& heights, const std::vector<Simplex>& simplices);

// Convenience: heights 0, 1, 2, ... by vertex id rank, signs via orient_signs.
Triangulation build_oriented(int dim, const std::vector<Simplex>& simplices,
                             std::map<std::string, std::vector<Simplex>> boundary = {});

std::vector<MoveSite> enumerate_oriented_moves(const Triangulation& t, MoveKind kind);
Triangulation apply_pachner_move(const Triangulation& t, const MoveSite& site);

// Rotation-invariant signature of a move configuration: the replaced
// simplices written in height ranks of the move's vertex set, with signs.
std::string move_template_key(const Triangulation& t, const MoveSite& site);

// One representative (triangulation, site) for every oriented class of the
// move, found by running the move over every height order and both
// orientations of its standard configuration. Keyed by template key.
std::map<std::string, std::pair<Triangulation, MoveSite>> oriented_move_representatives(MoveKind kind);

// Glues boundary component name_b of b onto name_a of a. The vertex matching
// is the unique height-order-preserving bijection unless `matching`
// (b-vertex -> a-vertex) is supplied, in which case it must preserve order.
Triangulation glue_along_boundary(const Triangulation& a, const Triangulation& b, const std::string& name_a,
                                  const std::string& name_b, const std::map<Vid, Vid>& matching = {});

Triangulation disjoint_union(const Triangulation& a, const Triangulation& b);
Triangulation mirror(const Triangulation& t);
// Sub-triangulation spanned by the given top simplices (vertex ids and
// heights kept, boundary recomputed).
Triangulation subcomplex(const Triangulation& t, const std::vector<int>& simplex_indices);
Triangulation rename_boundary(const Triangulation& t, const std::map<std::string, std::string>& names);

// Order-stable description (vertices relabelled by height rank).
std::string canonical_form(const Triangulation& t);
// Oriented, simplexwise order-preserving isomorphism (ignores boundary names
// and absolute heights).
bool isomorphic(const Triangulation& a, const Triangulation& b);

// sphere2, torus2, surface_genus (params {g}), sphere3, s2xs1, torus3, rp3;
// also disk (params {k}), annulus (params {k}) and ball3.
Triangulation builtin_manifold(const std::string& name, const std::vector<int>& params = {});
std::vector<std::string> builtin_manifold_names();

}  // namespace orb
