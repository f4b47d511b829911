#pragma once
// JSON (de)serialization for the domain types. Field names here are the
// on-disk wire format.

#include <json.hpp>

#include "shotscout/model/types.hpp"

namespace shotscout::model {

void to_json(nlohmann::json& j, const ShotQuery& q);
void from_json(const nlohmann::json& j, ShotQuery& q);

void to_json(nlohmann::json& j, const AssetPaths& a);
void from_json(const nlohmann::json& j, AssetPaths& a);

void to_json(nlohmann::json& j, const BenchmarkSample& s);
void from_json(const nlohmann::json& j, BenchmarkSample& s);

void to_json(nlohmann::json& j, const VideoAsset& v);
void from_json(const nlohmann::json& j, VideoAsset& v);

void to_json(nlohmann::json& j, const FrameRef& f);
void from_json(const nlohmann::json& j, FrameRef& f);

void to_json(nlohmann::json& j, const FrameGrid& g);
void from_json(const nlohmann::json& j, FrameGrid& g);

void to_json(nlohmann::json& j, const LocalizationOutcome& o);
void from_json(const nlohmann::json& j, LocalizationOutcome& o);

void to_json(nlohmann::json& j, const Verdict& v);
void from_json(const nlohmann::json& j, Verdict& v);

void to_json(nlohmann::json& j, const FinalResult& f);
void from_json(const nlohmann::json& j, FinalResult& f);

void to_json(nlohmann::json& j, const RunRecord& r);
void from_json(const nlohmann::json& j, RunRecord& r);

// Strict loader for benchmark records: enforces type invariants (context
// arrays of length 2, known category, resolution enum). Lenient structural
// issues are the validator's job; this throws Error(MalformedJson).
BenchmarkSample parse_benchmark_sample(const nlohmann::json& j);

} // namespace shotscout::model
