#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "tet/catalog.hpp"
#include "tet/clustering.hpp"
#include "tet/embedder.hpp"
#include "tet/ingest.hpp"
#include "tet/io.hpp"
#include "tet/metrics.hpp"
#include "tet/synthgen.hpp"

namespace tet {

/// Every tunable of an end-to-end run. Serialized in full into each report.
struct PipelineConfig {
    enum class Source { synth, ingest };

    Source source{Source::synth};
    SynthConfig synth;

    std::string edges_path;
    std::string labels_path;  // optional for ingest; evaluation is skipped without it
    DiscretizationSpec binning;

    int max_subgraph_nodes{3};
    ExclusionMode exclusion{ExclusionMode::rooted_aware};
    AggregationKind aggregation{AggregationKind::mean};

    std::optional<double> eps;  // nullopt: chosen by eps_rule
    EpsRule eps_rule{EpsRule::max_k_distance};
    std::size_t min_pts{4};
    bool standardize{false};
    AnomalyRule rule;

    bool spectral_baseline{true};
    std::size_t spectral_dim{8};

    unsigned threads{0};
    std::string output_dir;
    bool dump_steps{false};
};

Json pipeline_config_to_json(const PipelineConfig& cfg);
/// Overlays the keys present in `json` onto `base`; unknown keys are errors.
PipelineConfig pipeline_config_from_json(const Json& json, PipelineConfig base = {});

struct PipelineResult {
    std::optional<EvalReport> evaluation;
    double eps{0.0};
    std::size_t catalog_size{0};
    Json report;
};

/// synth|ingest -> embed -> cluster -> eval -> project. Artifacts go to
/// cfg.output_dir when it is non-empty.
PipelineResult run_pipeline(const PipelineConfig& cfg);

}  // namespace tet
