#include "derivclust/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>

#include "derivclust/baselines.hpp"
#include "derivclust/error.hpp"
#include "derivclust/random.hpp"
#include "derivclust/textio.hpp"

namespace derivclust {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 6> kMethodNames{{
    {Method::kmeans, "kmeans"},
    {Method::agg, "agg"},
    {Method::agg_cos, "agg_cos"},
    {Method::agg_cos_avg, "agg_cos_avg"},
    {Method::random, "random"},
    {Method::pos, "pos"},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_unsigned(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc() || ptr != end) {
    throw DataError("config key '" + std::string(key) + "': expected a non-negative integer, got '" +
                    std::string(value) + "'");
  }
  return out;
}

}  // namespace

std::string_view to_string(Method method) {
  for (const auto& [m, name] : kMethodNames) {
    if (m == method) return name;
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (const auto& [m, n] : kMethodNames) {
    if (n == name) return m;
  }
  throw DataError("unknown method '" + std::string(name) + "'");
}

ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const auto key = trim(text.substr(0, eq));
    const auto value = trim(text.substr(eq + 1));
    if (!seen.insert(std::string(key)).second) {
      throw DataError("config key '" + std::string(key) + "' given twice");
    }
    if (key == "method") {
      cfg.method = parse_method(value);
    } else if (key == "k") {
      cfg.k = parse_unsigned<std::size_t>(key, value);
    } else if (key == "runs") {
      cfg.runs = parse_unsigned<std::size_t>(key, value);
    } else if (key == "normalize") {
      if (value == "true") {
        cfg.normalize = true;
      } else if (value == "false") {
        cfg.normalize = false;
      } else {
        throw DataError("config key 'normalize': expected true or false, got '" + std::string(value) + "'");
      }
    } else if (key == "sample_per_class") {
      if (value == "none") {
        cfg.sample_per_class.reset();
      } else {
        cfg.sample_per_class = parse_unsigned<std::size_t>(key, value);
      }
    } else if (key == "min_freq") {
      cfg.min_freq = parse_unsigned<std::size_t>(key, value);
    } else if (key == "min_type_count") {
      cfg.min_type_count = parse_unsigned<std::size_t>(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_unsigned<std::uint64_t>(key, value);
    } else {
      throw DataError("unknown config key '" + std::string(key) + "'");
    }
  }
  if (cfg.k == 0) throw DataError("config key 'k' must be positive");
  if (cfg.runs == 0) throw DataError("config key 'runs' must be positive");
  if (cfg.sample_per_class == 0u) throw DataError("config key 'sample_per_class' must be positive");
  if (cfg.min_type_count == 0) throw DataError("config key 'min_type_count' must be positive");
  return cfg;
}

void write_experiment_config(std::ostream& out, const ExperimentConfig& cfg) {
  out << "method = " << to_string(cfg.method) << '\n'
      << "k = " << cfg.k << '\n'
      << "runs = " << cfg.runs << '\n'
      << "normalize = " << (cfg.normalize ? "true" : "false") << '\n'
      << "sample_per_class = "
      << (cfg.sample_per_class ? std::to_string(*cfg.sample_per_class) : std::string("none")) << '\n'
      << "min_freq = " << cfg.min_freq << '\n'
      << "min_type_count = " << cfg.min_type_count << '\n'
      << "seed = " << cfg.seed << '\n';
}

DiffDataset balanced_sample(const DiffDataset& data, std::size_t per_class, std::uint64_t seed) {
  if (per_class == 0) throw DataError("per_class must be positive");
  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < data.size(); ++i) members[data.item(i).cls].push_back(i);

  Rng rng(seed);
  std::vector<std::size_t> chosen;
  chosen.reserve(per_class * members.size());
  for (auto& [cls, idx] : members) {
    if (idx.size() < per_class) {
      throw DataError("class '" + cls + "' has " + std::to_string(idx.size()) +
                      " items, fewer than the " + std::to_string(per_class) + " requested");
    }
    // Partial Fisher-Yates: the first per_class slots end up a uniform sample.
    for (std::size_t i = 0; i < per_class; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.index(idx.size() - i));
      std::swap(idx[i], idx[j]);
    }
    chosen.insert(chosen.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(per_class));
  }
  std::sort(chosen.begin(), chosen.end());
  return data.subset(chosen);
}

ClusterAssignment run_method(const DiffDataset& data, const ExperimentConfig& cfg, std::uint64_t seed) {
  switch (cfg.method) {
    case Method::kmeans: {
      KMeansConfig kc;
      kc.k = cfg.k;
      kc.seed = seed;
      kc.threads = cfg.threads;
      return kmeans(data, kc);
    }
    case Method::agg:
    case Method::agg_cos:
    case Method::agg_cos_avg: {
      AggConfig ac;
      ac.k = cfg.k;
      ac.metric = cfg.method == Method::agg ? Metric::euclidean : Metric::cosine;
      ac.linkage = cfg.method == Method::agg_cos_avg ? Linkage::average : Linkage::ward;
      ac.threads = cfg.threads;
      return agglomerative(data, ac);
    }
    case Method::random:
      return random_baseline(data.size(), cfg.k, seed);
    case Method::pos:
      return pos_baseline(data);
  }
  throw DataError("unhandled method");
}

AggregateReport aggregate(Method method, std::size_t k, std::vector<EvalReport> runs) {
  AggregateReport out;
  out.method = method;
  out.k = k;
  out.runs = std::move(runs);
  if (out.runs.empty()) return out;
  const auto n = static_cast<double>(out.runs.size());
  std::map<std::string, double> precision_sum;
  for (const auto& run : out.runs) {
    out.h += run.h;
    out.c += run.c;
    out.v += run.v;
    out.accuracy += run.accuracy;
    out.cls_assigned += static_cast<double>(run.cls_assigned);
    for (const auto& [cls, score] : run.per_class) {
      auto& agg = out.per_class[cls];
      agg.recall += score.recall;
      if (score.precision) {
        precision_sum[cls] += *score.precision;
        ++agg.precision_runs;
      }
    }
  }
  out.h /= n;
  out.c /= n;
  out.v /= n;
  out.accuracy /= n;
  out.cls_assigned /= n;
  for (auto& [cls, agg] : out.per_class) {
    agg.recall /= n;
    if (agg.precision_runs > 0) agg.precision = precision_sum[cls] / static_cast<double>(agg.precision_runs);
  }
  return out;
}

AggregateReport run_experiment(const DiffDataset& data, const ExperimentConfig& cfg) {
  if (data.empty()) throw DataError("experiment needs a non-empty dataset");
  if (cfg.runs == 0) throw DataError("runs must be positive");
  std::vector<EvalReport> reports;
  reports.reserve(cfg.runs);
  std::size_t k = cfg.k;
  for (std::size_t r = 0; r < cfg.runs; ++r) {
    const auto seed = run_seed(cfg.seed, r);
    const auto sampled = cfg.sample_per_class
                             ? balanced_sample(data, *cfg.sample_per_class, sampling_seed(seed))
                             : data;
    const auto assignment = run_method(sampled, cfg, clustering_seed(seed));
    k = assignment.k;
    reports.push_back(evaluate(sampled.classes(), assignment));
  }
  return aggregate(cfg.method, k, std::move(reports));
}

std::vector<AggregateReport> sweep_clusters(const DiffDataset& data, const ExperimentConfig& cfg,
                                            std::span<const std::size_t> ks) {
  std::vector<AggregateReport> out;
  out.reserve(ks.size());
  for (const auto k : ks) {
    auto run_cfg = cfg;
    run_cfg.k = k;
    out.push_back(run_experiment(data, run_cfg));
  }
  return out;
}

DiffDataset gen_synthetic(const SyntheticParams& params) {
  if (params.n_classes < 2) throw DataError("n_classes must be at least 2");
  if (params.dim < 2) throw DataError("dim must be at least 2");
  if (params.per_class < 1) throw DataError("per_class must be positive");
  if (!(params.sigma >= 0)) throw DataError("sigma must be non-negative");
  if (!(params.scale_min > 0) || !(params.scale_max >= params.scale_min)) {
    throw DataError("scale range must satisfy 0 < scale_min <= scale_max");
  }
  constexpr std::size_t kMaxAttempts = 10'000;
  constexpr double kMaxCosine = 0.5;
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 8> kPosKeys{{
      {"A", "D"}, {"A", "N"}, {"N", "A"}, {"N", "N"}, {"N", "V"}, {"V", "A"}, {"V", "N"}, {"V", "V"},
  }};

  Rng rng(params.seed);
  const std::size_t dim = params.dim;
  std::vector<double> directions;
  directions.reserve(params.n_classes * dim);
  std::vector<double> candidate(dim);
  for (std::size_t c = 0; c < params.n_classes; ++c) {
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < kMaxAttempts && !accepted; ++attempt) {
      double norm = 0;
      for (auto& x : candidate) {
        x = rng.normal();
        norm += x * x;
      }
      norm = std::sqrt(norm);
      if (norm == 0) continue;
      for (auto& x : candidate) x /= norm;
      accepted = true;
      for (std::size_t prev = 0; prev < c && accepted; ++prev) {
        double dot = 0;
        for (std::size_t t = 0; t < dim; ++t) dot += candidate[t] * directions[prev * dim + t];
        accepted = dot <= kMaxCosine;
      }
    }
    if (!accepted) {
      throw DataError("could not draw " + std::to_string(params.n_classes) +
                      " class directions with pairwise cosine <= 0.5 in " + std::to_string(dim) +
                      " dimensions");
    }
    directions.insert(directions.end(), candidate.begin(), candidate.end());
  }

  const double log_lo = std::log(params.scale_min);
  const double log_span = std::log(params.scale_max) - log_lo;
  DiffDataset data(dim);
  std::vector<double> d(dim);
  for (std::size_t c = 0; c < params.n_classes; ++c) {
    char label[32];
    std::snprintf(label, sizeof label, "class%02zu", c);
    const auto& [parent_pos, child_pos] = kPosKeys[c % kPosKeys.size()];
    for (std::size_t i = 0; i < params.per_class; ++i) {
      const double scale = log_span == 0 ? params.scale_min : std::exp(log_lo + log_span * rng.uniform());
      for (std::size_t t = 0; t < dim; ++t) {
        d[t] = scale * (directions[c * dim + t] + params.sigma * rng.normal());
      }
      const auto suffix = std::to_string(c) + "_" + std::to_string(i);
      data.add(DiffItem{make_pair("p" + suffix, "c" + suffix, std::string(parent_pos), std::string(child_pos)),
                        label},
               d);
    }
  }
  return data;
}

}  // namespace derivclust
