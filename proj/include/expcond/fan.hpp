#pragma once

#include "expcond/polytope.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace expcond {

// Weight of a top cone together with its lift: a signed combination of
// monomials in face polytopes (translation classes) whose mixed volume
// realizes the numeric weight. Product weights pair through these lifts.
struct LiftTerm {
    Rat coeff;
    std::vector<Polytope> monomial;  // translation-normalized faces, with multiplicity
};

struct WeightedCone {
    Cone cone;
    SqrtRat weight;
    std::vector<LiftTerm> lift;
};

/**
 * Fan of rational polyhedral cones of one fixed dimension k, each top cone
 * carrying a numeric weight under the induced Euclidean normalization.
 * Lower-dimensional faces are implicit. Signed weights are allowed; the
 * canonical representative refines each span group by its own facet
 * hyperplanes, merges equal cells, and prunes zero weights.
 */
class WeightedFan {
public:
    WeightedFan(int ambient_dim, int dim) : ambient_(ambient_dim), dim_(dim) {}

    int ambient_dim() const { return ambient_; }
    int dim() const { return dim_; }
    const std::vector<WeightedCone>& cones() const { return cones_; }
    bool empty() const { return cones_.empty(); }
    const std::string& normalization() const { return normalization_; }

    void add_cone(WeightedCone wc);

private:
    int ambient_;
    int dim_;
    std::vector<WeightedCone> cones_;
    std::string normalization_ = "euclidean";
};

// Dual k-dimensional skeleton fan of a polytope: dual cones of the
// (m-k)-dimensional faces, weighted by their intrinsic volumes.
WeightedFan dual_skeleton_fan(const Polytope& P, int k);
// Full dual fan (k = ambient dimension).
WeightedFan dual_fan(const Polytope& P);

WeightedFan fan_scale(const WeightedFan& F, const Rat& s);

// Common refinement of the supports; weights add on cells covered by both.
WeightedFan fan_add(const WeightedFan& K, const WeightedFan& L);

// Refine each span group by its own hyperplanes and merge equal cells;
// zero-weight cells are kept.
WeightedFan refine_merge(const WeightedFan& F);

// Refine-merge-prune canonical representative of the equivalence class.
WeightedFan canonicalize(const WeightedFan& F);

// Weights agree on every common full-dimensional cell of a joint refinement.
bool fan_equivalent(const WeightedFan& K, const WeightedFan& L);

// Deterministic rational point avoiding every proper subspace spanned by
// generators of the two fans; admissible for every cone pair.
RatVec admissible_point(const WeightedFan& K, const WeightedFan& L, std::uint64_t seed = 0);
bool is_admissible(const WeightedFan& K, const WeightedFan& L, const RatVec& e);

// U-factorization: images of the cones containing the minimal face whose
// span contains U, projected to quotient coordinates (the reduced basis of
// the orthogonal complement of U); weights inherited.
WeightedFan factorize(const WeightedFan& F, const Subspace& U);

// Stable e-intersection. Weights of the (p+q-m)-dimensional cells are the
// pairwise products of the cone weights, evaluated by the mixed-volume
// pairing of the lifted face polytopes inside the complementary subspace.
WeightedFan e_intersection(const WeightedFan& K, const WeightedFan& L, const RatVec& e);

// e-intersection at an admissible point, certified by agreement at three
// independently drawn admissible points; throws when the three disagree.
WeightedFan stable_product(const WeightedFan& K, const WeightedFan& L, std::uint64_t seed = 0);

// Support comparison of the closed top-dimensional parts.
bool supports_equal(const WeightedFan& K, const WeightedFan& L);

}  // namespace expcond
