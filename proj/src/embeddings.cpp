#include "derivclust/embeddings.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "derivclust/error.hpp"
#include "derivclust/textio.hpp"
#include "derivclust/utf8.hpp"

namespace derivclust {

namespace {

std::optional<std::size_t> parse_count(std::string_view field) {
  std::size_t value = 0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

double l2_norm(std::span<const double> v) {
  double sum = 0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw DataError("embedding dimension must be positive");
}

bool EmbeddingTable::set(std::string_view token, std::span<const double> vec) {
  if (vec.size() != dim_) {
    throw DataError("vector for '" + std::string(token) + "' has " + std::to_string(vec.size()) +
                    " components, expected " + std::to_string(dim_));
  }
  const auto [it, inserted] = index_.try_emplace(std::string(token), tokens_.size());
  if (inserted) {
    tokens_.emplace_back(token);
    values_.insert(values_.end(), vec.begin(), vec.end());
  } else {
    std::copy(vec.begin(), vec.end(), values_.begin() + static_cast<std::ptrdiff_t>(it->second * dim_));
  }
  return inserted;
}

std::optional<std::span<const double>> EmbeddingTable::find(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return row(it->second);
}

LoadedEmbeddings load_embeddings_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing 'count dim' header");
  const auto header = utf8::split_ws(line);
  if (header.size() != 2) throw ParseError(1, "header must be 'count dim'");
  const auto count = parse_count(header[0]);
  const auto dim = parse_count(header[1]);
  if (!count || !dim || *dim == 0) throw ParseError(1, "header must hold a count and a positive dim");

  LoadedEmbeddings loaded{EmbeddingTable(*dim), 0};
  std::vector<double> vec(*dim);
  std::size_t line_no = 1;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = utf8::split_ws(line);
    if (fields.empty()) throw ParseError(line_no, "empty row");
    if (fields.size() != *dim + 1) {
      throw ParseError(line_no, "expected " + std::to_string(*dim) + " components, found " +
                                    std::to_string(fields.size() - 1));
    }
    for (std::size_t i = 0; i < *dim; ++i) {
      const auto value = parse_real(fields[i + 1]);
      if (!value) throw ParseError(line_no, "bad number '" + std::string(fields[i + 1]) + "'");
      if (!std::isfinite(*value)) throw ParseError(line_no, "non-finite component");
      vec[i] = *value;
    }
    if (!loaded.table.set(fields[0], vec)) ++loaded.duplicates;
    ++rows;
  }
  if (rows != *count) {
    throw ParseError(line_no, "header declares " + std::to_string(*count) + " rows, found " +
                                  std::to_string(rows));
  }
  return loaded;
}

void write_embeddings_text(std::ostream& out, const EmbeddingTable& table) {
  out << table.size() << ' ' << table.dim() << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << table.token(i);
    for (double x : table.row(i)) out << ' ' << format_real(x);
    out << '\n';
  }
}

EmbeddingTable normalize(const EmbeddingTable& table) {
  EmbeddingTable out = table;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double norm = l2_norm(out.row(i));
    if (norm == 0) throw DataError("cannot normalize zero vector of token '" + out.token(i) + "'");
    for (std::size_t j = 0; j < out.dim_; ++j) out.values_[i * out.dim_ + j] /= norm;
  }
  out.normalized_ = true;
  return out;
}

FrequencyTable load_frequencies(std::istream& in) {
  FrequencyTable freq;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = utf8::split(line, '\t');
    if (fields.size() != 2) throw ParseError(line_no, "expected 'token<TAB>count'");
    const auto count = parse_real(fields[1]);
    if (!count || !std::isfinite(*count) || *count < 0) {
      throw ParseError(line_no, "count must be a finite non-negative number");
    }
    freq[std::string(fields[0])] = *count;
  }
  return freq;
}

DiffDataset::DiffDataset(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw DataError("dataset dimension must be positive");
}

void DiffDataset::add(DiffItem item, std::span<const double> d) {
  if (d.size() != dim_) throw DataError("difference vector has wrong dimension");
  for (double x : d) {
    if (!std::isfinite(x)) throw DataError("non-finite difference vector component");
  }
  if (item.cls == kUnmappedClass) throw DataError("dataset items need a mapped class");
  items_.push_back(std::move(item));
  values_.insert(values_.end(), d.begin(), d.end());
}

std::vector<std::string> DiffDataset::classes() const {
  std::vector<std::string> out;
  out.reserve(items_.size());
  for (const auto& item : items_) out.push_back(item.cls);
  return out;
}

DiffDataset DiffDataset::subset(std::span<const std::size_t> indices) const {
  DiffDataset out(dim_);
  for (auto i : indices) out.add(items_.at(i), row(i));
  return out;
}

BuiltDiffs build_diffs(std::span<const DerivPair> pairs, std::span<const std::string> classes,
                       const EmbeddingTable& table, const FrequencyTable* freq, double min_freq) {
  if (pairs.size() != classes.size()) throw DataError("pairs and classes differ in length");
  BuiltDiffs out{DiffDataset(table.dim()), {}};
  const auto frequent = [&](const std::string& lemma) {
    const auto it = freq->find(lemma);
    return it != freq->end() && it->second >= min_freq;
  };
  std::vector<double> d(table.dim());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& pair = pairs[i];
    if (classes[i] == kUnmappedClass) {
      ++out.excluded.unmapped;
      continue;
    }
    const auto parent = table.find(pair.parent_lemma);
    const auto child = table.find(pair.child_lemma);
    if (!parent || !child) {
      ++out.excluded.missing_embedding;
      continue;
    }
    if (freq != nullptr && (!frequent(pair.parent_lemma) || !frequent(pair.child_lemma))) {
      ++out.excluded.low_frequency;
      continue;
    }
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = (*child)[j] - (*parent)[j];
    out.data.add(DiffItem{pair, classes[i]}, d);
  }
  return out;
}

DiffDataset normalize_rows(const DiffDataset& data) {
  DiffDataset out(data.dim());
  std::vector<double> d(data.dim());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto row = data.row(i);
    const double norm = l2_norm(row);
    if (norm == 0) throw DataError("cannot normalize zero difference vector at item " + std::to_string(i));
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = row[j] / norm;
    out.add(data.item(i), d);
  }
  return out;
}

void write_diff_dataset(std::ostream& out, const DiffDataset& data) {
  out << stage_header("diffs") << '\n';
  out << data.size() << ' ' << data.dim() << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& item = data.item(i);
    out << item.pair.parent_lemma << '\t' << item.pair.child_lemma << '\t' << item.cls << '\t';
    const auto row = data.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out << ' ';
      out << format_real(row[j]);
    }
    out << '\n';
  }
}

DiffDataset read_diff_dataset(std::istream& in) {
  expect_stage_header(in, "diffs");
  std::string line;
  if (!std::getline(in, line)) throw ParseError(2, "missing 'N D' line");
  const auto header = utf8::split_ws(line);
  const auto n = header.size() == 2 ? parse_count(header[0]) : std::nullopt;
  const auto dim = header.size() == 2 ? parse_count(header[1]) : std::nullopt;
  if (!n || !dim || *dim == 0) throw ParseError(2, "expected 'N D' with positive D");

  DiffDataset data(*dim);
  std::vector<double> d(*dim);
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = utf8::split(line, '\t');
    if (fields.size() != 4) throw ParseError(line_no, "expected parent, child, class and vector columns");
    const auto comps = utf8::split_ws(fields[3]);
    if (comps.size() != *dim) {
      throw ParseError(line_no, "expected " + std::to_string(*dim) + " components, found " +
                                    std::to_string(comps.size()));
    }
    for (std::size_t j = 0; j < *dim; ++j) {
      const auto value = parse_real(comps[j]);
      if (!value || !std::isfinite(*value)) throw ParseError(line_no, "bad component '" + std::string(comps[j]) + "'");
      d[j] = *value;
    }
    if (fields[2].empty() || fields[2] == kUnmappedClass) throw ParseError(line_no, "item needs a mapped class");
    // POS tags are not part of this format.
    data.add(DiffItem{make_pair(std::string(fields[0]), std::string(fields[1]), "", ""),
                      std::string(fields[2])},
             d);
  }
  if (data.size() != *n) {
    throw ParseError(line_no, "header declares " + std::to_string(*n) + " items, found " +
                                  std::to_string(data.size()));
  }
  return data;
}

}  // namespace derivclust
