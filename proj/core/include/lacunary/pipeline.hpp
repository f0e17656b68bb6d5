#pragma once

#include <string>

#include "lacunary/experiment.hpp"

namespace lacunary {

struct PipelineResult {
  /// Full experiment record; see README for the layout.
  Json record;
  /// True when some verdict in the record failed.
  bool falsified = false;
};

/// Blockwise selection over a Littlewood-Paley partition: per-block
/// s-independence frequencies next to C(s) ell_k^{2s} / |E_k|, and the block
/// counts |E'_k| against ell_k.
PipelineResult pipeline_theorem_4_8(const ExperimentConfig& config);

/// The combined construction: growth classification, schedule validity,
/// per-block independence, psi decay over seeds and a Weyl scan of one
/// selected set. A dyadic partition runs case (i), a gross one case (ii).
PipelineResult pipeline_main_theorem(const ExperimentConfig& config);

/// Dispatches on config.pipeline.
PipelineResult run_pipeline(const ExperimentConfig& config);

/// Human-readable digest of a record.
std::string summarize(const Json& record);

}  // namespace lacunary
