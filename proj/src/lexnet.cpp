#include "derivclust/lexnet.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include "derivclust/error.hpp"
#include "derivclust/utf8.hpp"

namespace derivclust {

namespace {

std::optional<LexemeId> parse_id(std::string_view field) {
  LexemeId value = 0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

DerivPair make_pair(std::string parent_lemma, std::string child_lemma, std::string parent_pos,
                    std::string child_pos) {
  DerivPair pair{std::move(parent_lemma), std::move(child_lemma), std::move(parent_pos),
                 std::move(child_pos), false};
  pair.degenerate = pair.parent_lemma == pair.child_lemma;
  return pair;
}

DerivNetwork::DerivNetwork(std::vector<Lexeme> lexemes) : lexemes_(std::move(lexemes)) {
  std::sort(lexemes_.begin(), lexemes_.end(),
            [](const Lexeme& a, const Lexeme& b) { return a.id < b.id; });
  index_.reserve(lexemes_.size());
  for (std::size_t i = 0; i < lexemes_.size(); ++i) {
    if (!index_.emplace(lexemes_[i].id, i).second) {
      throw IntegrityError("duplicate lexeme id " + std::to_string(lexemes_[i].id));
    }
  }
  for (const auto& lex : lexemes_) {
    if (!lex.parent_id) continue;
    if (!index_.contains(*lex.parent_id)) {
      throw IntegrityError("lexeme " + std::to_string(lex.id) + " refers to missing parent " +
                           std::to_string(*lex.parent_id));
    }
    // Ascending because lexemes_ is sorted by id.
    child_index_[*lex.parent_id].push_back(lex.id);
    ++relations_;
  }

  // Walk up from every node; a walk that revisits a node of its own path is a cycle.
  enum class Mark : unsigned char { unseen, on_path, done };
  std::vector<Mark> mark(lexemes_.size(), Mark::unseen);
  std::vector<std::size_t> path;
  for (std::size_t start = 0; start < lexemes_.size(); ++start) {
    std::size_t cur = start;
    path.clear();
    while (mark[cur] == Mark::unseen) {
      mark[cur] = Mark::on_path;
      path.push_back(cur);
      const auto& parent = lexemes_[cur].parent_id;
      if (!parent) break;
      cur = index_.at(*parent);
    }
    if (mark[cur] == Mark::on_path && lexemes_[path.back()].parent_id) {
      throw IntegrityError("cycle in parent links through lexeme " +
                           std::to_string(lexemes_[cur].id));
    }
    for (auto i : path) mark[i] = Mark::done;
  }
}

const Lexeme* DerivNetwork::find(LexemeId id) const {
  const auto it = index_.find(id);
  return it == index_.end() ? nullptr : &lexemes_[it->second];
}

const Lexeme& DerivNetwork::at(LexemeId id) const {
  const auto* lex = find(id);
  if (lex == nullptr) throw std::out_of_range("no lexeme with id " + std::to_string(id));
  return *lex;
}

std::span<const LexemeId> DerivNetwork::children(LexemeId id) const {
  const auto it = child_index_.find(id);
  if (it == child_index_.end()) return {};
  return it->second;
}

std::vector<LexemeId> DerivNetwork::roots() const {
  std::vector<LexemeId> out;
  for (const auto& lex : lexemes_) {
    if (!lex.parent_id) out.push_back(lex.id);
  }
  return out;
}

DerivNetwork parse_network(std::istream& in) {
  std::vector<Lexeme> lexemes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = utf8::split(line, '\t');
    if (fields.size() != 5) {
      throw ParseError(line_no, "expected 5 tab-separated columns, found " +
                                    std::to_string(fields.size()));
    }
    Lexeme lex;
    const auto id = parse_id(fields[0]);
    if (!id) throw ParseError(line_no, "id is not a non-negative integer: '" + std::string(fields[0]) + "'");
    lex.id = *id;
    lex.lemma = fields[1];
    lex.techlemma = fields[2];
    lex.pos = fields[3];
    if (lex.lemma.empty()) throw ParseError(line_no, "empty lemma");
    try {
      utf8::decode(lex.lemma);
    } catch (const DataError& e) {
      throw ParseError(line_no, e.what());
    }
    if (!fields[4].empty()) {
      const auto parent = parse_id(fields[4]);
      if (!parent) {
        throw ParseError(line_no, "parent id is not a non-negative integer: '" +
                                      std::string(fields[4]) + "'");
      }
      lex.parent_id = *parent;
    }
    lexemes.push_back(std::move(lex));
  }
  return DerivNetwork(std::move(lexemes));
}

void write_network(std::ostream& out, const DerivNetwork& network) {
  for (const auto& lex : network.lexemes()) {
    out << lex.id << '\t' << lex.lemma << '\t' << lex.techlemma << '\t' << lex.pos << '\t';
    if (lex.parent_id) out << *lex.parent_id;
    out << '\n';
  }
}

std::vector<DerivPair> extract_pairs(const DerivNetwork& network) {
  std::vector<DerivPair> pairs;
  pairs.reserve(network.relation_count());
  for (const auto& child : network.lexemes()) {
    if (!child.parent_id) continue;
    const auto& parent = network.at(*child.parent_id);
    pairs.push_back(make_pair(parent.lemma, child.lemma, parent.pos, child.pos));
  }
  return pairs;
}

}  // namespace derivclust
