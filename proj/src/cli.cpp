#include "derivclust/cli.hpp"

#include <ostream>

#include "CLI11.hpp"

#include "derivclust/error.hpp"
#include "derivclust/pipeline.hpp"

namespace derivclust {

namespace {

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

void print_histogram(std::ostream& out, const char* title, const TypeHistogram& hist) {
  out << title << ": " << hist.counts.size() << " types, " << hist.total() << " pairs\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Derivation-pair extraction, difference-vector clustering and evaluation", "derivclust"};
  app.require_subcommand(1);
  app.fallthrough();

  RunOptions opts;
  std::uint64_t seed = 0;
  bool no_timestamp = false;
  auto* seed_opt = app.add_option("--seed", seed, "Override the random seed");
  app.add_option("--threads", opts.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_flag("--no-timestamp", no_timestamp, "Leave the generation time out of reports");

  std::string network_path;
  std::string pairs_out;
  auto* extract = app.add_subcommand("extract-pairs", "Write the parent/child pairs of a network");
  extract->add_option("network", network_path, "Network TSV")->required();
  extract->add_option("out", pairs_out, "Pairs file to write")->required();

  std::string pairs_path;
  std::string classmap_path;
  std::string annotated_out;
  std::size_t min_type_count = 250;
  std::optional<std::string> sig_freq;
  double sig_min_freq = 5;
  auto* sigs = app.add_subcommand("signatures", "Annotate pairs with affix signatures and classes");
  sigs->add_option("pairs", pairs_path, "Pairs file")->required();
  sigs->add_option("classmap", classmap_path, "Class map TSV")->required();
  sigs->add_option("out", annotated_out, "Annotated pairs file to write")->required();
  sigs->add_option("--min-type-count", min_type_count, "Minimum instances for a type to be kept")
      ->check(CLI::PositiveNumber);
  sigs->add_option("--freq", sig_freq, "Corpus frequency TSV; pairs with a rarer lemma are not counted");
  sigs->add_option("--min-freq", sig_min_freq, "Minimum corpus frequency of both lemmata");

  EvaluateInputs eval;
  auto* evaluate = app.add_subcommand("evaluate", "Cluster difference vectors and score the clustering");
  evaluate->add_option("--pairs", eval.annotated_path, "Annotated pairs file");
  evaluate->add_option("--embeddings", eval.embeddings_path, "Embeddings in text format");
  evaluate->add_option("--freq", eval.freq_path, "Corpus frequency TSV");
  evaluate->add_option("--dataset", eval.dataset_path, "Difference-vector dataset instead of pairs");
  evaluate->add_option("--config", eval.config_path, "Experiment config")->required();
  evaluate->add_option("--out", eval.out_prefix, "Report path prefix")->required();
  evaluate->add_option("--sweep", eval.sweep, "Run once per cluster count")->delimiter(',');

  SyntheticParams synth;
  std::string synth_out;
  auto* gen = app.add_subcommand("gen-synthetic", "Write a synthetic dataset with gold classes");
  gen->add_option("out", synth_out, "Dataset file to write")->required();
  gen->add_option("--classes", synth.n_classes, "Number of classes");
  gen->add_option("--per-class", synth.per_class, "Items per class");
  gen->add_option("--dim", synth.dim, "Dimension");
  gen->add_option("--sigma", synth.sigma, "Per-component noise deviation");
  gen->add_option("--scale-min", synth.scale_min, "Smallest item scale");
  gen->add_option("--scale-max", synth.scale_max, "Largest item scale");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (seed_opt->count() > 0) opts.seed = seed;
  opts.timestamp = !no_timestamp;

  try {
    if (extract->parsed()) {
      const auto summary = cmd_extract_pairs(network_path, pairs_out);
      out << "nodes: " << summary.nodes << ", relations: " << summary.relations << '\n';
    } else if (sigs->parsed()) {
      const auto summary =
          cmd_signatures(pairs_path, classmap_path, min_type_count, annotated_out, sig_freq, sig_min_freq);
      if (sig_freq) out << "pairs below corpus frequency: " << summary.frequency_filtered << '\n';
      print_histogram(out, "types before filtering", summary.all);
      print_histogram(out, "types kept", summary.kept);
      out << "irregular pairs: " << summary.all.irregular << ", degenerate pairs: " << summary.all.degenerate
          << '\n';
      for (const auto& [type, count] : summary.kept.counts) out << count << '\t' << type << '\n';
    } else if (evaluate->parsed()) {
      const auto report = cmd_evaluate(eval, opts);
      out << "method " << to_string(report.method) << ", k " << report.k << ": V " << report.v << ", accuracy "
          << report.accuracy << '\n';
    } else if (gen->parsed()) {
      if (opts.seed) synth.seed = *opts.seed;
      cmd_gen_synthetic(synth, synth_out);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}

}  // namespace derivclust
