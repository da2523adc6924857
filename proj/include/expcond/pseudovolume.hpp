#pragma once

#include "expcond/polytope.hpp"
#include "expcond/solid_angle.hpp"

#include <optional>
#include <string>
#include <vector>

namespace expcond {

// Exact square of c(T) = cos(T_perp, sqrt(-1) T) for an n-dimensional
// tangent space in an ambient of dimension 2n.
Rat c_coefficient_sq(const Subspace& T);
double c_coefficient(const Subspace& T);

struct PseudoTerm {
    std::string face_id;  // vertex indices of the face inside the sum polytope
    Rat c_squared;
    double c = 0;
    std::optional<AngleEstimate> angle;  // absent when the term was skipped (c or volume zero)
    SqrtRat face_mixed_volume;
    double contribution = 0;
    double error = 0;
};

struct PseudoVolumeResult {
    int n = 0;
    double value = 0;
    double error_bound = 0;  // propagated Monte Carlo error (1 sigma)
    std::vector<PseudoTerm> terms;
    // Present when every term had an exactly rational angle and the radical
    // parts were commensurable; equals value * (2 pi)^n.
    std::optional<SqrtRat> exact_scaled;
};

PseudoVolumeResult pseudovolume(const Polytope& P, const AngleConfig& cfg = {});

// Definition-level mixed pseudovolume: decomposes every n-face of the
// Minkowski sum into faces-summands and pairs their mixed volume with the
// face's angle data.
PseudoVolumeResult mixed_pseudovolume(const std::vector<Polytope>& ps, const AngleConfig& cfg = {});

// Independent inclusion-exclusion route used as a cross-check oracle.
PseudoVolumeResult mixed_pseudovolume_polarized(const std::vector<Polytope>& ps,
                                                const AngleConfig& cfg = {});

// Exact vanishing decision (no sampling): negative complex rank.
bool pseudovolume_vanishes(const std::vector<Polytope>& ps);

}  // namespace expcond
