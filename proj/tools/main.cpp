#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "concomp/errors.hpp"
#include "concomp/pipeline.hpp"

namespace {

void add_config_options(CLI::App* cmd, concomp::PipelineConfig& config, std::string& wsd) {
  cmd->add_option("--corpus", config.corpus_dir, "Directory of .ttl/.nt ontologies")->required();
  cmd->add_option("--out", config.out_dir, "Output directory")->required();
  cmd->add_option("--lemmas", config.lemmas_path, "Lexicon lemma TSV")->required();
  cmd->add_option("--relations", config.relations_path, "Synset relations TSV (optional)");
  cmd->add_option("--frames", config.close_match_path, "Synset-to-frame close match TSV")
      ->required();
  cmd->add_option("--frame-hierarchy", config.hierarchy_path, "Frame inheritance TSV")->required();
  cmd->add_option("--lang", config.language, "Label language tag (default en)");
  cmd->add_option("--kmax", config.k_max, "Upper bound for the cluster count sweep");
  cmd->add_option("--seed", config.seed, "Seed for all randomized steps");
  cmd->add_option("--wsd", wsd, "Disambiguation strategy: first-sense|graph-ppr")
      ->check(CLI::IsMember({"first-sense", "graph-ppr"}));
  cmd->add_option("--names", config.names_path, "JSON file of cluster name overrides");
  cmd->add_option("--dump", config.dumps, "Write stage artifacts (graph|communities|vdocs|ground|cluster)");
  cmd->add_flag("--strict", config.strict, "Abort on the first malformed ontology");
  cmd->add_option("--jobs", config.jobs, "Worker pool width (default: hardware)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conceptual component extraction from OWL/RDF ontology corpora"};
  app.require_subcommand(1);

  concomp::PipelineConfig config;
  std::string wsd = "graph-ppr";
  std::string stage;

  CLI::App* extract = app.add_subcommand("extract", "Run the full pipeline over a corpus");
  add_config_options(extract, config, wsd);

  CLI::App* stage_cmd = app.add_subcommand("stage", "Run a single pipeline stage");
  stage_cmd->add_option("name", stage, "graph|communities|vdocs|ground|cluster")->required();
  add_config_options(stage_cmd, config, wsd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints help or the parse diagnostic
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    config.strategy = concomp::wsd_strategy_from_string(wsd);
    if (extract->parsed()) return concomp::run_extract(config);
    return concomp::run_stage(stage, config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
