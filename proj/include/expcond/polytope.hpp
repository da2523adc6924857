#pragma once

#include "expcond/cone.hpp"
#include "expcond/linalg.hpp"

#include <memory>
#include <string>
#include <vector>

namespace expcond {

struct Face;

/**
 * Rational convex polytope in canonical vertex form: the vertex list is
 * minimal, deduplicated and sorted lexicographically, so structural
 * equality coincides with geometric equality. Immutable; the face lattice
 * and triangulation caches are populated once and shared between copies.
 */
class Polytope {
public:
    // Canonical hull of an arbitrary nonempty point list.
    static Polytope hull(int ambient_dim, const RatMat& points);
    static Polytope point(const RatVec& p);
    static Polytope segment(const RatVec& a, const RatVec& b);

    int ambient_dim() const;
    const RatMat& vertices() const;
    int vertex_count() const { return static_cast<int>(vertices().size()); }
    int dim() const;
    // Direction space of the affine hull, as a subspace through the origin.
    const Subspace& tangent() const;

    bool operator==(const Polytope& o) const;
    bool operator!=(const Polytope& o) const { return !(*this == o); }
    bool contains(const RatVec& p) const;

    // All d-dimensional faces (0 <= d <= dim), including the polytope itself
    // at d == dim.
    std::vector<Face> faces(int d) const;
    // The face on which the functional attains its maximum.
    Face face_at(const RatVec& functional) const;

    Polytope translate(const RatVec& t) const;
    Polytope scaled(const Rat& s) const;
    // Translate so the lexicographically smallest vertex sits at the origin.
    Polytope translation_normalized() const;

    // Intrinsic dim(P)-volume inside the affine hull; a point has volume 1.
    SqrtRat volume() const;
    Rat support(const RatVec& v) const;

    std::string key() const;

private:
    struct Core;
    explicit Polytope(std::shared_ptr<const Core> core) : core_(std::move(core)) {}
    std::shared_ptr<const Core> core_;
};

/**
 * Face of a polytope, carried with the data the pseudovolume and fan
 * machinery consume: its tangent space translated to the origin and its
 * dual cone (the functionals attaining their maximum on the whole face;
 * always contains the orthogonal complement of the parent's affine hull).
 */
struct Face {
    Polytope parent;
    std::vector<int> vertex_indices;
    int dim = 0;
    Subspace tangent;
    Cone dual_cone;

    RatMat vertex_coords() const;
    Polytope as_polytope() const;
};

Polytope minkowski_sum(const std::vector<Polytope>& ps);

// Faces-summands of a face F of the Minkowski sum of ps: the argmax faces
// for a functional in the relative interior of F's dual cone. Their
// Minkowski sum reproduces F exactly (checked).
std::vector<Face> face_summands(const std::vector<Polytope>& ps, const Face& F);
// Same with the precomputed sum.
std::vector<Face> face_summands_of_sum(const std::vector<Polytope>& ps, const Polytope& sum,
                                       const Face& F);

// Mixed volume of k polytopes spanning (after translation) a subspace of
// dimension <= k, normalized so the diagonal gives the ordinary volume.
// Computed by inclusion-exclusion over volumes of partial Minkowski sums.
SqrtRat mixed_volume(const std::vector<Polytope>& ps);

// min over nonempty subsets of dim(sum) - |subset|.
int polytope_rank(const std::vector<Polytope>& ps);
// Same with complex dimension of the minimal complex affine subspace.
int complex_rank(const std::vector<Polytope>& ps);

}  // namespace expcond
