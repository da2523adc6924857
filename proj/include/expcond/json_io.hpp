#pragma once

#include "expcond/expsum.hpp"

#include <json.hpp>

namespace expcond {

using Json = nlohmann::ordered_json;

Json to_json(const Polytope& p);
Polytope polytope_from_json(const Json& j);

Json to_json(const WeightedFan& f);
WeightedFan fan_from_json(const Json& j);

Json to_json(const RingElement& x);
RingElement ring_element_from_json(const Json& j);

Json to_json(const ExpSum& f);
ExpSum expsum_from_json(const Json& j);

Json to_json(const SqrtRat& v);
Json to_json(const PseudoVolumeResult& r);
Json to_json(const IndexResult& r);

// Deterministic machine-readable run report: identical inputs and seed give
// byte-identical serializations (wall time is reported separately).
struct RunReport {
    std::string command;
    std::string inputs_digest;
    std::uint64_t seed = 0;
    std::int64_t samples = 0;
    bool exact_pipeline = false;  // no Monte Carlo step contributed
    Json results;

    Json to_json() const;
};

std::string digest_hex(const std::string& payload);

}  // namespace expcond
