#pragma once

#include <nlohmann/json.hpp>

#include "imreg/bounds.hpp"
#include "imreg/channel_model.hpp"
#include "imreg/decoders.hpp"
#include "imreg/info_measures.hpp"
#include "imreg/permutations.hpp"
#include "imreg/type_counting.hpp"

// JSON conversions. Non-finite reals are written as null.

namespace imreg {

using Json = nlohmann::ordered_json;

/// null for non-finite values.
Json real(double v);

Json to_json(const JointPMF& p);
JointPMF joint_from_json(const Json& j);

Json to_json(const Permutation& a);
Permutation permutation_from_json(const Json& j);

Json to_json(const TransformationFamily& f);

/// "cyclic", "cyclic_subgroup:M", or an array of permutations. Throws
/// ValidationError for anything else.
TransformationFamily family_from_json(const Json& j, std::size_t n);

/// {"type":"bsc","crossover":d} | {"type":"joint","x_size","y_size","probs"} |
/// {"type":"dmc","prior":[...],"kernel":[joint, ...]}. A plain joint is
/// realized with a single-symbol scene.
ChannelPair channel_from_json(const Json& j);

Json to_json(const InfoMoments& m);
Json to_json(const RateEval& r);
Json to_json(const ProbabilityBound& b);
Json to_json(const BoundReport& r);
Json to_json(const AchievabilityResult& a);
Json to_json(const ErrorEstimate& e);
Json to_json(const TypeCountReport& r);
Json to_json(const ExponentGapReport& g);
Json to_json(const GapEstimate& g);
Json to_json(const FamilyReport& r);

}  // namespace imreg
