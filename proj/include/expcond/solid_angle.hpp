#pragma once

#include "expcond/cone.hpp"

#include <cstdint>
#include <optional>

namespace expcond {

struct AngleConfig {
    std::int64_t samples = 200000;
    std::uint64_t seed = 0;
};

struct AngleEstimate {
    enum class Method { exact, monte_carlo };
    double value = 0;
    Method method = Method::exact;
    double std_error = 0;  // 0 iff exact
    std::int64_t samples = 0;
    // Set when the angle is an exactly known rational fraction of the full
    // angle (subspaces, rays, right planar angles).
    std::optional<Rat> exact_fraction;
};

/**
 * Solid angle of a cone inside its own linear span, normalized so the full
 * angle of dim(span) equals 1. Exact for salient dimension <= 2 after
 * splitting off the lineality; Monte Carlo on the unit sphere of the span
 * otherwise, with a deterministic seed derived from the cone generators.
 */
AngleEstimate exterior_angle(const Cone& K, const AngleConfig& cfg = {});

std::uint64_t fnv1a64(const std::string& data);

}  // namespace expcond
