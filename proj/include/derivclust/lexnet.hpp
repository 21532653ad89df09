#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace derivclust {

using LexemeId = std::uint64_t;

// Class label for pairs outside the class map.
inline constexpr std::string_view kUnmappedClass = "unmapped";

struct Lexeme {
  LexemeId id = 0;
  std::string lemma;
  std::string techlemma;
  std::string pos;
  std::optional<LexemeId> parent_id;

  bool operator==(const Lexeme&) const = default;
};

// One parent -> child derivation. Homographs are kept apart by id; embedding
// lookup later goes by lemma string only.
struct DerivPair {
  std::string parent_lemma;
  std::string child_lemma;
  std::string parent_pos;
  std::string child_pos;
  bool degenerate = false;

  bool operator==(const DerivPair&) const = default;
};

DerivPair make_pair(std::string parent_lemma, std::string child_lemma, std::string parent_pos,
                    std::string child_pos);

// Immutable forest of lexemes. Lexemes are stored in ascending id order.
class DerivNetwork {
 public:
  DerivNetwork() = default;

  // Validates ids, parent references and acyclicity. Throws IntegrityError.
  explicit DerivNetwork(std::vector<Lexeme> lexemes);

  std::size_t node_count() const { return lexemes_.size(); }
  std::size_t relation_count() const { return relations_; }

  std::span<const Lexeme> lexemes() const { return lexemes_; }
  const Lexeme* find(LexemeId id) const;
  const Lexeme& at(LexemeId id) const;

  // Child ids in ascending order; empty for leaves and unknown ids.
  std::span<const LexemeId> children(LexemeId id) const;
  std::vector<LexemeId> roots() const;

  bool operator==(const DerivNetwork& other) const { return lexemes_ == other.lexemes_; }

 private:
  std::vector<Lexeme> lexemes_;
  std::unordered_map<LexemeId, std::size_t> index_;
  std::unordered_map<LexemeId, std::vector<LexemeId>> child_index_;
  std::size_t relations_ = 0;
};

// Reads the 5-column tab-separated network format.
// Throws ParseError for malformed lines, IntegrityError for bad structure.
DerivNetwork parse_network(std::istream& in);

void write_network(std::ostream& out, const DerivNetwork& network);

// One pair per parent link, ordered by ascending child id.
std::vector<DerivPair> extract_pairs(const DerivNetwork& network);

}  // namespace derivclust
