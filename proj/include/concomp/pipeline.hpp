#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>

#include "concomp/grounding.hpp"

namespace concomp {

struct PipelineConfig {
  std::filesystem::path corpus_dir;
  std::filesystem::path out_dir;
  std::filesystem::path lemmas_path;
  std::filesystem::path relations_path;     // optional; empty disables graph-ppr support
  std::filesystem::path close_match_path;
  std::filesystem::path hierarchy_path;
  std::filesystem::path names_path;         // optional JSON {clusterId: name}
  std::string language = "en";
  int k_max = 30;
  std::uint64_t seed = 0;
  WsdStrategy strategy = WsdStrategy::GraphPpr;
  std::set<std::string> dumps;  // stage names whose artifacts are written
  bool strict = false;
  int jobs = 0;  // 0 = hardware concurrency
};

// Full corpus run: per-ontology stages in a worker pool, then corpus-wide
// clustering and catalogue assembly. Returns 0 on success, 1 on failure;
// malformed ontologies are skipped with a warning unless strict is set.
int run_extract(const PipelineConfig& config);

// Runs one stage of {graph, communities, vdocs, ground, cluster} against the
// dump files of the previous stage. Returns 0/1; unknown stage names return 2.
int run_stage(const std::string& stage, const PipelineConfig& config);

}  // namespace concomp
