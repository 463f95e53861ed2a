#pragma once

#include <compare>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Defeasible deontic logic: literals, rules in two modes (constitutive and
// deontic), defeasible theories and a prover that tags every literal with
// definite (Δ) and defeasible (∂) provability in both modes.
namespace normrl::ddl {

// A propositional atom. Parenthesized arguments are part of the token:
// eat(blueGhost) is one opaque name, equal only to itself.
struct Atom {
  std::string name;
  auto operator<=>(const Atom&) const = default;
};

struct Literal {
  Atom atom;
  bool positive = true;

  Literal complement() const { return {atom, !positive}; }
  std::string str() const { return positive ? atom.name : "¬" + atom.name; }
  auto operator<=>(const Literal&) const = default;
};

inline Literal pos(std::string name) { return {{std::move(name)}, true}; }
inline Literal neg(std::string name) { return {{std::move(name)}, false}; }

// Constitutive rules state what holds; deontic rules what is obligatory.
enum class Mode { Constitutive, Deontic };

enum class RuleKind { Strict, Defeasible, Defeater };

// A rule premise. A deontic antecedent O(l) requires the literal to be
// provable as an obligation; otherwise it must hold factually.
struct Antecedent {
  Literal literal;
  bool deontic = false;
  auto operator<=>(const Antecedent&) const = default;
};

struct Rule {
  std::string label;
  Mode mode = Mode::Constitutive;
  RuleKind kind = RuleKind::Strict;
  std::vector<Antecedent> antecedents;
  Literal consequent;
};

enum class ProofTag { PlusDelta, MinusDelta, PlusPartial, MinusPartial };

class TheoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Immutable, validated theory. Validation enforces: unique rule labels,
// superiority pairs that reference existing labels, irreflexivity, and that
// the relation only links rules with complementary consequents in the same
// mode. Facts are constitutive; a deontic "fact" is written as a strict
// deontic rule with an empty body.
class DefeasibleTheory {
 public:
  DefeasibleTheory(std::set<Literal> facts, std::vector<Rule> rules,
                   std::vector<std::pair<std::string, std::string>> superiority);

  const std::set<Literal>& facts() const { return facts_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<std::pair<std::string, std::string>>& superiority() const {
    return superiority_;
  }

 private:
  std::set<Literal> facts_;
  std::vector<Rule> rules_;
  std::vector<std::pair<std::string, std::string>> superiority_;
};

// Tags for every (literal, mode) mentioned in the proved theory. Exactly one
// of +Δ/−Δ and exactly one of +∂/−∂ is recorded per entry; literals never
// mentioned default to the negative tags.
class ConclusionSet {
 public:
  struct Tags {
    bool delta_plus = false;    // +Δ if true, −Δ otherwise
    bool partial_plus = false;  // +∂ if true, −∂ otherwise
    auto operator<=>(const Tags&) const = default;
  };
  using Key = std::pair<Literal, Mode>;

  void set(const Literal& l, Mode m, Tags t) { entries_[{l, m}] = t; }

  bool has(const Literal& l, Mode m, ProofTag tag) const;

  const std::map<Key, Tags>& entries() const { return entries_; }
  bool operator==(const ConclusionSet&) const = default;

 private:
  std::map<Key, Tags> entries_;
};

// Adds, for every strict constitutive rule a1,..,an -> c with a purely
// factual body, the n rules {a1,..,¬c,..,an} -> ¬ai (fresh labels, ¬c at
// position i). Defeasible rules and defeaters are direction-sensitive and are
// not contraposed; neither are rules with deontic antecedents.
std::vector<Rule> contrapositive_closure(const std::vector<Rule>& rules);

// Computes the full conclusion set of a theory. Deterministic; pure.
ConclusionSet prove(const DefeasibleTheory& theory);

// True iff the tag is recorded for (literal, mode). Unknown entries carry the
// negative tags.
bool query(const ConclusionSet& conclusions, const Literal& literal, Mode mode,
           ProofTag tag);

// Deterministic line-oriented dumps for golden tests and the prove CLI.
// One conclusion per line, e.g. "+∂_O ¬move(north)".
std::string dump_conclusions(const ConclusionSet& conclusions);
std::string dump_theory(const DefeasibleTheory& theory);

std::string to_string(Mode m);
std::string to_string(ProofTag t);
std::string to_string(const Rule& r);

}  // namespace normrl::ddl
