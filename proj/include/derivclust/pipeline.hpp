#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "derivclust/experiment.hpp"
#include "derivclust/lexnet.hpp"
#include "derivclust/signature.hpp"

namespace derivclust {

// `#derivclust pairs v1`, then `parent<TAB>child<TAB>parent_pos<TAB>child_pos<TAB>degenerate`.
void write_pairs(std::ostream& out, const std::vector<DerivPair>& pairs);
std::vector<DerivPair> read_pairs(std::istream& in);

struct AnnotatedPair {
  DerivPair pair;
  std::string signature;
  std::string cls;
};

// `#derivclust signatures v1`, then the pair columns followed by signature and class.
void write_annotated(std::ostream& out, const std::vector<AnnotatedPair>& rows);
std::vector<AnnotatedPair> read_annotated(std::istream& in);

struct SignatureSummary {
  TypeHistogram all;
  TypeHistogram kept;
  std::size_t frequency_filtered = 0;
};

// Signature and class for every pair. Only types that reach min_type_count among
// pairs whose lemmata pass the corpus filter receive a class.
std::vector<AnnotatedPair> annotate_pairs(const std::vector<DerivPair>& pairs, const ClassMap& map,
                                          std::size_t min_type_count, const FrequencyTable* freq,
                                          double min_freq, SignatureSummary* summary = nullptr);

struct RunOptions {
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  bool timestamp = true;
};

struct ExtractSummary {
  std::size_t nodes = 0;
  std::size_t relations = 0;
};

ExtractSummary cmd_extract_pairs(const std::string& network_path, const std::string& out_path);

SignatureSummary cmd_signatures(const std::string& pairs_path, const std::string& classmap_path,
                                std::size_t min_type_count, const std::string& out_path,
                                const std::optional<std::string>& freq_path, double min_freq);

struct EvaluateInputs {
  // Either annotated pairs plus embeddings, or a difference-vector dataset.
  std::optional<std::string> annotated_path;
  std::optional<std::string> embeddings_path;
  std::optional<std::string> freq_path;
  std::optional<std::string> dataset_path;
  std::string config_path;
  // Reports go to <prefix>.json, <prefix>.tsv, <prefix>.classes.tsv and <prefix>.exclusions.tsv.
  std::string out_prefix;
  std::vector<std::size_t> sweep;
};

AggregateReport cmd_evaluate(const EvaluateInputs& inputs, const RunOptions& opts);

void cmd_gen_synthetic(const SyntheticParams& params, const std::string& out_path);

}  // namespace derivclust
