#include "derivclust/signature.hpp"

#include <algorithm>
#include <istream>

#include "derivclust/error.hpp"
#include "derivclust/utf8.hpp"

namespace derivclust {

CommonSubstring longest_common_substring(std::u32string_view a, std::u32string_view b) {
  // run[j] = length of the common suffix of a[..i) and b[..j).
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> run(b.size() + 1, 0);
  std::size_t best_len = 0;
  std::size_t best_a = 0;
  std::size_t best_b = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      run[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
      const std::size_t len = run[j];
      if (len == 0) continue;
      const std::size_t sa = i - len;
      const std::size_t sb = j - len;
      if (len > best_len || (len == best_len && (sa < best_a || (sa == best_a && sb < best_b)))) {
        best_len = len;
        best_a = sa;
        best_b = sb;
      }
    }
    std::swap(prev, run);
  }
  if (best_len == 0) return {};
  return {std::u32string(a.substr(best_a, best_len)), best_a, best_b};
}

std::string AffixSignature::render() const {
  std::string out;
  const auto append = [&out](std::string token) {
    if (!out.empty()) out += ' ';
    out += token;
  };
  if (!prefix_deleted.empty()) append(prefix_deleted + "-");
  if (!prefix_added.empty()) append(prefix_added + "+");
  if (!suffix_deleted.empty()) append("-" + suffix_deleted);
  if (!suffix_added.empty()) append("+" + suffix_added);
  return out.empty() ? std::string(kEmptySignature) : out;
}

std::optional<std::string> AffixSignature::apply(std::string_view parent) const {
  if (parent.size() < prefix_deleted.size() + suffix_deleted.size()) return std::nullopt;
  if (!parent.starts_with(prefix_deleted) || !parent.ends_with(suffix_deleted)) return std::nullopt;
  const auto stem = parent.substr(prefix_deleted.size(),
                                  parent.size() - prefix_deleted.size() - suffix_deleted.size());
  std::string child = prefix_added;
  child += stem;
  child += suffix_added;
  return child;
}

AffixSignature parse_signature(std::string_view rendered) {
  AffixSignature sig;
  if (rendered == kEmptySignature) return sig;
  const auto fail = [&](const std::string& why) {
    return DataError("bad signature '" + std::string(rendered) + "': " + why);
  };
  // Slot order: prefix_deleted, prefix_added, suffix_deleted, suffix_added.
  int last_slot = -1;
  const auto tokens = utf8::split(rendered, ' ');
  for (const auto token : tokens) {
    if (token.size() < 2) throw fail("token too short");
    int slot = 0;
    std::string_view body;
    if (token.back() == '-') {
      slot = 0;
      body = token.substr(0, token.size() - 1);
    } else if (token.back() == '+') {
      slot = 1;
      body = token.substr(0, token.size() - 1);
    } else if (token.front() == '-') {
      slot = 2;
      body = token.substr(1);
    } else if (token.front() == '+') {
      slot = 3;
      body = token.substr(1);
    } else {
      throw fail("token '" + std::string(token) + "' has no affix marker");
    }
    if (slot <= last_slot) throw fail("tokens out of canonical order");
    last_slot = slot;
    std::string* fields[] = {&sig.prefix_deleted, &sig.prefix_added, &sig.suffix_deleted,
                             &sig.suffix_added};
    *fields[slot] = body;
  }
  return sig;
}

AffixSignature signature(const DerivPair& pair) {
  if (pair.degenerate || pair.parent_lemma == pair.child_lemma) {
    throw DataError("degenerate pair");
  }
  const auto parent = utf8::decode(pair.parent_lemma);
  const auto child = utf8::decode(pair.child_lemma);
  const auto lcs = longest_common_substring(parent, child);
  AffixSignature sig;
  if (lcs.stem.empty()) {
    sig.irregular = true;
    sig.suffix_deleted = pair.parent_lemma;
    sig.suffix_added = pair.child_lemma;
    return sig;
  }
  const std::u32string_view p = parent;
  const std::u32string_view c = child;
  const auto len = lcs.stem.size();
  sig.prefix_deleted = utf8::encode(p.substr(0, lcs.start_a));
  sig.prefix_added = utf8::encode(c.substr(0, lcs.start_b));
  sig.suffix_deleted = utf8::encode(p.substr(lcs.start_a + len));
  sig.suffix_added = utf8::encode(c.substr(lcs.start_b + len));
  return sig;
}

std::size_t TypeHistogram::total() const {
  std::size_t sum = 0;
  for (const auto& [type, count] : counts) sum += count;
  return sum;
}

TypeHistogram count_types(const std::vector<DerivPair>& pairs) {
  TypeHistogram hist;
  for (const auto& pair : pairs) {
    if (pair.degenerate || pair.parent_lemma == pair.child_lemma) {
      ++hist.degenerate;
      continue;
    }
    const auto sig = signature(pair);
    if (sig.irregular) {
      ++hist.irregular;
      continue;
    }
    ++hist.counts[sig.render()];
  }
  return hist;
}

TypeHistogram filter_types(const TypeHistogram& hist, std::size_t min_count) {
  if (min_count < 1) throw DataError("min_count must be at least 1");
  TypeHistogram out;
  out.irregular = hist.irregular;
  out.degenerate = hist.degenerate;
  for (const auto& [type, count] : hist.counts) {
    if (count >= min_count) out.counts.emplace(type, count);
  }
  return out;
}

void ClassMap::add(const std::string& signature, const std::string& label, PosPair pos) {
  auto [it, inserted] = entries_.try_emplace(signature, ClassEntry{label, {}});
  if (!inserted && it->second.label != label) {
    throw DataError("signature '" + signature + "' mapped to both '" + it->second.label +
                    "' and '" + label + "'");
  }
  it->second.pos_pairs.push_back(std::move(pos));
}

const ClassEntry* ClassMap::find(std::string_view signature) const {
  const auto it = entries_.find(signature);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> ClassMap::labels() const {
  std::vector<std::string> out;
  for (const auto& [sig, entry] : entries_) out.push_back(entry.label);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ClassMap load_class_map(std::istream& in) {
  ClassMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = utf8::split(line, '\t');
    if (fields.size() != 4) {
      throw ParseError(line_no, "expected 4 tab-separated columns, found " +
                                    std::to_string(fields.size()));
    }
    if (fields[1].empty()) throw ParseError(line_no, "empty class label");
    try {
      const auto sig = parse_signature(fields[0]);
      if (sig.render() != fields[0]) throw DataError("signature is not in canonical form");
      map.add(std::string(fields[0]), std::string(fields[1]),
              PosPair{std::string(fields[2]), std::string(fields[3])});
    } catch (const ParseError&) {
      throw;
    } catch (const DataError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return map;
}

std::string assign_class(const AffixSignature& sig, const ClassMap& map) {
  if (sig.irregular) return std::string(kUnmappedClass);
  const auto* entry = map.find(sig.render());
  return entry == nullptr ? std::string(kUnmappedClass) : entry->label;
}

}  // namespace derivclust
