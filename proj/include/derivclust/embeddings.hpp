#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "derivclust/lexnet.hpp"

namespace derivclust {

// Token -> dense vector map with one flat row-major buffer.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dim = 1);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return tokens_.size(); }
  bool normalized() const { return normalized_; }

  // Inserts or overwrites. Returns false when the token was already present.
  bool set(std::string_view token, std::span<const double> vec);

  std::optional<std::span<const double>> find(std::string_view token) const;
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
  const std::string& token(std::size_t i) const { return tokens_[i]; }

 private:
  friend EmbeddingTable normalize(const EmbeddingTable& table);

  std::size_t dim_;
  std::vector<std::string> tokens_;
  std::vector<double> values_;
  std::unordered_map<std::string, std::size_t> index_;
  bool normalized_ = false;
};

struct LoadedEmbeddings {
  EmbeddingTable table;
  // Rows whose token had already been seen; the later row wins.
  std::size_t duplicates = 0;
};

// Text format: a "count dim" header, then "token c1 ... c_dim" per line.
// Throws ParseError on any malformed or non-finite row.
LoadedEmbeddings load_embeddings_text(std::istream& in);

void write_embeddings_text(std::ostream& out, const EmbeddingTable& table);

// Scales every vector to unit L2 norm. Throws DataError naming a zero-norm token.
EmbeddingTable normalize(const EmbeddingTable& table);

using FrequencyTable = std::unordered_map<std::string, double>;

// `token<TAB>count` rows.
FrequencyTable load_frequencies(std::istream& in);

struct DiffItem {
  DerivPair pair;
  std::string cls;
};

// Labelled difference vectors d = v(child) - v(parent).
class DiffDataset {
 public:
  explicit DiffDataset(std::size_t dim = 1);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  void add(DiffItem item, std::span<const double> d);

  const DiffItem& item(std::size_t i) const { return items_[i]; }
  std::span<const DiffItem> items() const { return items_; }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
  std::span<const double> values() const { return values_; }
  std::vector<std::string> classes() const;

  // Rows in the given order; indices may not repeat.
  DiffDataset subset(std::span<const std::size_t> indices) const;

 private:
  std::size_t dim_;
  std::vector<DiffItem> items_;
  std::vector<double> values_;
};

struct ExclusionReport {
  std::size_t missing_embedding = 0;
  std::size_t low_frequency = 0;
  std::size_t unmapped = 0;

  std::size_t total() const { return missing_embedding + low_frequency + unmapped; }
};

struct BuiltDiffs {
  DiffDataset data;
  ExclusionReport excluded;
};

inline constexpr double kDefaultMinFreq = 5;

// Each pair lands in exactly one bucket, checked in the order: unmapped class,
// missing embedding, low frequency (either lemma below min_freq).
BuiltDiffs build_diffs(std::span<const DerivPair> pairs, std::span<const std::string> classes,
                       const EmbeddingTable& table, const FrequencyTable* freq,
                       double min_freq = kDefaultMinFreq);

// Unit-normalizes each difference vector. Throws DataError on a zero row.
DiffDataset normalize_rows(const DiffDataset& data);

// `#derivclust diffs v1`, then "N D", then `parent<TAB>child<TAB>class<TAB>d1 ... dD`.
void write_diff_dataset(std::ostream& out, const DiffDataset& data);
DiffDataset read_diff_dataset(std::istream& in);

}  // namespace derivclust
