#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "lowtw/graph.hpp"
#include "lowtw/portal_embedding.hpp"

namespace lowtw {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kLibraryVersion = "0.1.0";

struct MultiplicativeReport {
    std::size_t pairs = 0;
    double max_ratio = 1;
    double mean_ratio = 1;
    double max_additive_gap = 0;
    bool dominating = true;
};

// Canonical copies; pairs with d_G = 0 are skipped for the ratio.
MultiplicativeReport multiplicative_report(const WeightedGraph& g, const OneToManyEmbedding& e,
                                           const DistortionOptions& opts = {});

// Mean over positive-weight edges of d_H(f(u), f(v)) / w(u, v).
double average_edge_distortion(const WeightedGraph& g, const OneToManyEmbedding& e);

// family: grid | subdiv | lbinstance | geodesic | fractal. `meta` receives the structural sidecar.
WeightedGraph generate_family(const std::string& family, const nlohmann::json& params, std::uint64_t seed = 1,
                              nlohmann::json* meta = nullptr);

// Runs one pipeline described by `config` ("command" plus its options) and returns the report.
// Output files named in the config are written as a side effect.
nlohmann::json run_experiment(const nlohmann::json& config);

// Flattens a report into "key,value" CSV rows (nested keys joined with '.').
std::string report_to_csv(const nlohmann::json& report);

}  // namespace lowtw
