#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "derivclust/lexnet.hpp"

namespace derivclust {

struct CommonSubstring {
  std::u32string stem;
  std::size_t start_a = 0;
  std::size_t start_b = 0;

  bool operator==(const CommonSubstring&) const = default;
};

// Longest common substring over Unicode scalar values. Among equally long
// candidates the leftmost start in `a` wins, then the leftmost start in `b`.
CommonSubstring longest_common_substring(std::u32string_view a, std::u32string_view b);

// Prefix/suffix changes turning a parent into its child around a shared stem.
struct AffixSignature {
  std::string prefix_deleted;
  std::string prefix_added;
  std::string suffix_deleted;
  std::string suffix_added;
  // No common substring: the suffix fields hold the whole words.
  bool irregular = false;

  // Canonical form, e.g. "-at +nout", "o+", or "∅" when nothing changes.
  std::string render() const;

  // Rewrites `parent` into the child, or nullopt when the parent does not carry
  // the deleted affixes.
  std::optional<std::string> apply(std::string_view parent) const;

  bool operator==(const AffixSignature&) const = default;
};

inline constexpr std::string_view kEmptySignature = "∅";


// Inverse of AffixSignature::render for regular signatures. Throws DataError.
AffixSignature parse_signature(std::string_view rendered);

// Throws DataError("degenerate pair") when both lemmata are identical.
AffixSignature signature(const DerivPair& pair);

struct TypeHistogram {
  std::map<std::string, std::size_t> counts;
  // Pairs left out of `counts`.
  std::size_t irregular = 0;
  std::size_t degenerate = 0;

  std::size_t total() const;
  bool operator==(const TypeHistogram&) const = default;
};

TypeHistogram count_types(const std::vector<DerivPair>& pairs);

// Drops types seen fewer than min_count times. min_count must be at least 1.
TypeHistogram filter_types(const TypeHistogram& hist, std::size_t min_count);

struct PosPair {
  std::string parent_pos;
  std::string child_pos;

  auto operator<=>(const PosPair&) const = default;
};

struct ClassEntry {
  std::string label;
  // Expected POS pairs; a type shared by several POS pairs lists each one.
  std::vector<PosPair> pos_pairs;
};

class ClassMap {
 public:
  // Registers one TSV row. A repeated signature must repeat its class and adds
  // another POS pair; a conflicting class throws DataError.
  void add(const std::string& signature, const std::string& label, PosPair pos);

  const ClassEntry* find(std::string_view signature) const;
  std::size_t size() const { return entries_.size(); }
  std::vector<std::string> labels() const;
  const std::map<std::string, ClassEntry, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, ClassEntry, std::less<>> entries_;
};

// Reads `signature<TAB>class<TAB>parent_pos<TAB>child_pos` rows.
ClassMap load_class_map(std::istream& in);

// Exact rendered-string lookup; misses yield "unmapped".
std::string assign_class(const AffixSignature& sig, const ClassMap& map);

}  // namespace derivclust
