#pragma once

#include "expcond/linalg.hpp"

#include <string>
#include <vector>

namespace expcond {

/**
 * Convex rational polyhedral cone, canonicalized as
 *   cone = lineality + cone(salient extreme rays),
 * with the salient part living in the ambient-orthogonal complement of the
 * lineality inside the span. Two cones are equal as sets iff their canonical
 * data agree.
 */
class Cone {
public:
    static Cone zero(int ambient_dim);
    static Cone from_generators(int ambient_dim, const RatMat& rays, const RatMat& lines = {});
    // Cone cut out inside `span` by the half-space constraints a.x >= 0
    // (normals given as ambient covectors).
    static Cone from_constraints(int ambient_dim, const Subspace& span, const RatMat& normals);

    int ambient_dim() const { return ambient_; }
    const Subspace& span() const { return span_; }
    int dim() const { return span_.dim(); }

    const Subspace& lineality() const { return lineality_; }
    const RatMat& salient_rays() const { return rays_; }
    int salient_dim() const { return dim() - lineality_.dim(); }
    bool is_subspace() const { return rays_.empty(); }
    bool is_zero() const { return dim() == 0; }

    // Generators as rays only (each lineality direction contributes both signs).
    RatMat generators() const;
    // Facet inequalities within the span, lifted to ambient covectors.
    const RatMat& facet_normals() const { return facet_normals_; }

    bool contains(const RatVec& x) const;
    bool contains(const Cone& other) const;

    Cone intersect(const Cone& other) const;
    // The two closed pieces on either side of the hyperplane h.x = 0.
    std::pair<Cone, Cone> split(const RatVec& h) const;
    // All faces, including the cone itself.
    std::vector<Cone> faces() const;
    // Image under a linear map given by rows (codomain_dim x ambient).
    Cone image(const RatMat& map_rows) const;

    // Point of the relative interior (sum of salient extreme rays).
    RatVec relint_point() const;

    const std::string& key() const { return key_; }
    bool operator==(const Cone& o) const { return ambient_ == o.ambient_ && key_ == o.key_; }

private:
    Cone(int ambient, Subspace span, Subspace lineality, RatMat rays, RatMat facet_normals);
    static Cone build(int ambient_dim, const Subspace& span, const RatMat& local_normals,
                      const RatMat& span_basis);

    int ambient_;
    Subspace span_;
    Subspace lineality_;
    RatMat rays_;           // canonical: primitive, sorted, orthogonal to lineality
    RatMat facet_normals_;  // ambient covectors lying in span
    std::string key_;
};

}  // namespace expcond
