#include "normrl/ddl.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace normrl::ddl {

namespace {

constexpr int kModeC = 0;
constexpr int kModeO = 1;

// The prover works on interned literal ids: atom id * 2 + (0 positive,
// 1 negative). Complementation flips the low bit.
struct Engine {
  const DefeasibleTheory& theory;

  std::unordered_map<std::string, int> atom_id;
  std::vector<std::string> atom_name;

  struct AntRef {
    int lit;
    bool deontic;
  };
  struct RuleRef {
    const Rule* rule;
    int consequent;
    std::vector<AntRef> ants;
  };
  std::vector<RuleRef> rules;

  // rules_for[lit * 2 + mode]: indices of rules that can conclude lit in that
  // mode. In deontic mode this includes strict constitutive rules, which may
  // fire through conversion when part of their body holds as an obligation.
  std::vector<std::vector<int>> rules_for;

  // superiors[loser]: rules explicitly superior to it.
  std::vector<std::vector<int>> superiors;

  // Tag state per (lit, mode): 0 unknown, +1 positive, -1 negative.
  std::vector<std::array<int8_t, 2>> delta;
  std::vector<std::array<int8_t, 2>> partial;

  explicit Engine(const DefeasibleTheory& th) : theory(th) {
    for (const Literal& f : th.facts()) intern(f.atom.name);
    for (const Rule& r : th.rules()) {
      intern(r.consequent.atom.name);
      for (const Antecedent& a : r.antecedents) intern(a.literal.atom.name);
    }
    int lits = static_cast<int>(atom_name.size()) * 2;
    delta.assign(lits, {0, 0});
    partial.assign(lits, {0, 0});
    rules_for.assign(lits * 2, {});

    rules.reserve(th.rules().size());
    std::unordered_map<std::string, int> by_label;
    for (const Rule& r : th.rules()) {
      RuleRef ref;
      ref.rule = &r;
      ref.consequent = lit_id(r.consequent);
      for (const Antecedent& a : r.antecedents)
        ref.ants.push_back({lit_id(a.literal), a.deontic});
      int idx = static_cast<int>(rules.size());
      int cons = ref.consequent;
      by_label[r.label] = idx;
      rules.push_back(std::move(ref));

      rules_for[cons * 2 + (r.mode == Mode::Constitutive ? kModeC : kModeO)].push_back(idx);
      if (r.mode == Mode::Constitutive && r.kind == RuleKind::Strict)
        rules_for[cons * 2 + kModeO].push_back(idx);
    }

    superiors.assign(rules.size(), {});
    for (const auto& [winner, loser] : th.superiority())
      superiors[by_label.at(loser)].push_back(by_label.at(winner));
  }

  void intern(const std::string& name) {
    if (atom_id.emplace(name, static_cast<int>(atom_name.size())).second)
      atom_name.push_back(name);
  }

  int lit_id(const Literal& l) const {
    return atom_id.at(l.atom.name) * 2 + (l.positive ? 0 : 1);
  }
  static int comp(int lit) { return lit ^ 1; }
  Literal literal_of(int lit) const {
    return {{atom_name[lit / 2]}, (lit & 1) == 0};
  }

  bool converted(int idx, int mode) const {
    return mode == kModeO && rules[idx].rule->mode == Mode::Constitutive;
  }
  bool supports(int idx, int lit, int mode) const {
    const RuleRef& r = rules[idx];
    if (r.rule->kind == RuleKind::Defeater || r.consequent != lit) return false;
    if (mode == kModeC) return r.rule->mode == Mode::Constitutive;
    return r.rule->mode == Mode::Deontic ||
           (r.rule->mode == Mode::Constitutive && r.rule->kind == RuleKind::Strict);
  }

  // ---- definite provability -------------------------------------------------

  bool delta_body_direct(const RuleRef& r) const {
    for (const AntRef& a : r.ants)
      if (delta[a.lit][a.deontic ? kModeO : kModeC] != 1) return false;
    return true;
  }
  // Conversion: every factual premise definitely provable in either mode,
  // every deontic premise as an obligation, and at least one premise holding
  // deontically (otherwise the rule only yields a constitutive conclusion).
  bool delta_body_conversion(const RuleRef& r) const {
    bool any_deontic = false;
    for (const AntRef& a : r.ants) {
      if (a.deontic) {
        if (delta[a.lit][kModeO] != 1) return false;
        any_deontic = true;
      } else {
        bool c = delta[a.lit][kModeC] == 1, o = delta[a.lit][kModeO] == 1;
        if (!c && !o) return false;
        if (o) any_deontic = true;
      }
    }
    return any_deontic;
  }

  void run_delta() {
    for (const Literal& f : theory.facts()) delta[lit_id(f)][kModeC] = 1;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const RuleRef& r : rules) {
        if (r.rule->kind != RuleKind::Strict) continue;
        if (r.rule->mode == Mode::Constitutive) {
          if (delta[r.consequent][kModeC] != 1 && delta_body_direct(r)) {
            delta[r.consequent][kModeC] = 1;
            changed = true;
          }
          if (delta[r.consequent][kModeO] != 1 && delta_body_conversion(r)) {
            delta[r.consequent][kModeO] = 1;
            changed = true;
          }
        } else {
          if (delta[r.consequent][kModeO] != 1 && delta_body_direct(r)) {
            delta[r.consequent][kModeO] = 1;
            changed = true;
          }
        }
      }
    }
    for (auto& d : delta)
      for (int m = 0; m < 2; ++m)
        if (d[m] == 0) d[m] = -1;
  }

  // ---- defeasible provability -----------------------------------------------

  bool applicable(int idx, int mode) const {
    const RuleRef& r = rules[idx];
    if (!converted(idx, mode)) {
      for (const AntRef& a : r.ants)
        if (partial[a.lit][a.deontic ? kModeO : kModeC] != 1) return false;
      return true;
    }
    bool any_deontic = false;
    for (const AntRef& a : r.ants) {
      if (a.deontic) {
        if (partial[a.lit][kModeO] != 1) return false;
        any_deontic = true;
      } else {
        bool c = partial[a.lit][kModeC] == 1, o = partial[a.lit][kModeO] == 1;
        if (!c && !o) return false;
        if (o) any_deontic = true;
      }
    }
    return any_deontic;
  }

  // Strong negation of applicability: some premise is already refuted, or (in
  // a conversion context) no premise can hold deontically any more.
  bool discarded(int idx, int mode) const {
    const RuleRef& r = rules[idx];
    if (!converted(idx, mode)) {
      for (const AntRef& a : r.ants)
        if (partial[a.lit][a.deontic ? kModeO : kModeC] == -1) return true;
      return false;
    }
    bool all_deontically_refuted = true;
    for (const AntRef& a : r.ants) {
      if (a.deontic) {
        if (partial[a.lit][kModeO] == -1) return true;
      } else {
        if (partial[a.lit][kModeC] == -1 && partial[a.lit][kModeO] == -1)
          return true;
      }
      if (partial[a.lit][kModeO] != -1) all_deontically_refuted = false;
    }
    return all_deontically_refuted;
  }

  bool defeated(int attacker, int lit, int mode) const {
    for (int winner : superiors[attacker])
      if (supports(winner, lit, mode) && applicable(winner, mode)) return true;
    return false;
  }

  bool derive_partial_plus(int lit, int mode) const {
    if (delta[lit][mode] == 1) return true;
    if (delta[comp(lit)][mode] != -1) return false;
    bool supported = false;
    for (int idx : rules_for[lit * 2 + mode]) {
      if (rules[idx].rule->kind == RuleKind::Defeater) continue;
      if (applicable(idx, mode)) {
        supported = true;
        break;
      }
    }
    if (!supported) return false;
    for (int s : rules_for[comp(lit) * 2 + mode])
      if (!discarded(s, mode) && !defeated(s, lit, mode)) return false;
    return true;
  }

  bool derive_partial_minus(int lit, int mode) const {
    if (delta[lit][mode] != -1) return false;
    if (delta[comp(lit)][mode] == 1) return true;
    bool all_supporters_discarded = true;
    for (int idx : rules_for[lit * 2 + mode]) {
      if (rules[idx].rule->kind == RuleKind::Defeater) continue;
      if (!discarded(idx, mode)) {
        all_supporters_discarded = false;
        break;
      }
    }
    if (all_supporters_discarded) return true;
    for (int s : rules_for[comp(lit) * 2 + mode]) {
      if (!applicable(s, mode)) continue;
      bool unanswered = true;
      for (int t : rules_for[lit * 2 + mode]) {
        if (rules[t].rule->kind == RuleKind::Defeater) continue;
        bool superior =
            std::find(superiors[s].begin(), superiors[s].end(), t) != superiors[s].end();
        if (superior && !discarded(t, mode)) {
          unanswered = false;
          break;
        }
      }
      if (unanswered) return true;
    }
    return false;
  }

  void run_partial() {
    int lits = static_cast<int>(atom_name.size()) * 2;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int lit = 0; lit < lits; ++lit) {
        for (int m = 0; m < 2; ++m) {
          if (partial[lit][m] != 0) continue;
          if (derive_partial_plus(lit, m)) {
            partial[lit][m] = 1;
            changed = true;
          } else if (derive_partial_minus(lit, m)) {
            partial[lit][m] = -1;
            changed = true;
          }
        }
      }
    }
    // Entries the exhaustive search could not settle (cyclic support) are
    // closed off as not provable.
    for (auto& p : partial)
      for (int m = 0; m < 2; ++m)
        if (p[m] == 0) p[m] = -1;
  }

  ConclusionSet collect() const {
    ConclusionSet out;
    int lits = static_cast<int>(atom_name.size()) * 2;
    for (int lit = 0; lit < lits; ++lit) {
      for (int m = 0; m < 2; ++m) {
        ConclusionSet::Tags t;
        t.delta_plus = delta[lit][m] == 1;
        t.partial_plus = partial[lit][m] == 1;
        assert(!(t.delta_plus && !t.partial_plus));
        out.set(literal_of(lit), m == kModeC ? Mode::Constitutive : Mode::Deontic, t);
      }
    }
    return out;
  }
};

}  // namespace

DefeasibleTheory::DefeasibleTheory(
    std::set<Literal> facts, std::vector<Rule> rules,
    std::vector<std::pair<std::string, std::string>> superiority)
    : facts_(std::move(facts)),
      rules_(std::move(rules)),
      superiority_(std::move(superiority)) {
  std::unordered_map<std::string, const Rule*> by_label;
  for (const Rule& r : rules_) {
    if (r.label.empty()) throw TheoryError("rule with empty label");
    if (r.consequent.atom.name.empty()) throw TheoryError("empty consequent atom");
    for (const Antecedent& a : r.antecedents)
      if (a.literal.atom.name.empty()) throw TheoryError("empty antecedent atom");
    if (!by_label.emplace(r.label, &r).second)
      throw TheoryError("duplicate rule label: " + r.label);
  }
  for (const Literal& f : facts_)
    if (f.atom.name.empty()) throw TheoryError("empty fact atom");
  for (const auto& [winner, loser] : superiority_) {
    auto wi = by_label.find(winner);
    auto li = by_label.find(loser);
    if (wi == by_label.end() || li == by_label.end())
      throw TheoryError("superiority references unknown label: " + winner + " > " + loser);
    if (winner == loser)
      throw TheoryError("superiority must be irreflexive: " + winner);
    const Rule& w = *wi->second;
    const Rule& l = *li->second;
    if (w.mode != l.mode)
      throw TheoryError("superiority across modes: " + winner + " > " + loser);
    if (w.consequent != l.consequent.complement())
      throw TheoryError("superiority between non-conflicting rules: " + winner + " > " +
                        loser);
  }
}

bool ConclusionSet::has(const Literal& l, Mode m, ProofTag tag) const {
  auto it = entries_.find({l, m});
  if (it == entries_.end())
    return tag == ProofTag::MinusDelta || tag == ProofTag::MinusPartial;
  switch (tag) {
    case ProofTag::PlusDelta:
      return it->second.delta_plus;
    case ProofTag::MinusDelta:
      return !it->second.delta_plus;
    case ProofTag::PlusPartial:
      return it->second.partial_plus;
    case ProofTag::MinusPartial:
      return !it->second.partial_plus;
  }
  return false;
}

std::vector<Rule> contrapositive_closure(const std::vector<Rule>& rules) {
  std::vector<Rule> out = rules;
  for (const Rule& r : rules) {
    if (r.mode != Mode::Constitutive || r.kind != RuleKind::Strict) continue;
    if (r.antecedents.empty()) continue;
    bool deontic_body = false;
    for (const Antecedent& a : r.antecedents) deontic_body |= a.deontic;
    if (deontic_body) continue;
    for (size_t i = 0; i < r.antecedents.size(); ++i) {
      Rule cp;
      cp.label = r.label + "#cp" + std::to_string(i + 1);
      cp.mode = Mode::Constitutive;
      cp.kind = RuleKind::Strict;
      cp.consequent = r.antecedents[i].literal.complement();
      cp.antecedents = r.antecedents;
      cp.antecedents[i] = {r.consequent.complement(), false};
      out.push_back(std::move(cp));
    }
  }
  return out;
}

ConclusionSet prove(const DefeasibleTheory& theory) {
  Engine engine(theory);
  engine.run_delta();
  engine.run_partial();
  return engine.collect();
}

bool query(const ConclusionSet& conclusions, const Literal& literal, Mode mode,
           ProofTag tag) {
  return conclusions.has(literal, mode, tag);
}

std::string to_string(Mode m) { return m == Mode::Constitutive ? "C" : "O"; }

std::string to_string(ProofTag t) {
  switch (t) {
    case ProofTag::PlusDelta:
      return "+Δ";
    case ProofTag::MinusDelta:
      return "-Δ";
    case ProofTag::PlusPartial:
      return "+∂";
    case ProofTag::MinusPartial:
      return "-∂";
  }
  return "?";
}

std::string to_string(const Rule& r) {
  std::ostringstream os;
  os << r.label << ": ";
  for (size_t i = 0; i < r.antecedents.size(); ++i) {
    if (i) os << ", ";
    const Antecedent& a = r.antecedents[i];
    if (a.deontic) os << "O(" << a.literal.str() << ")";
    else os << a.literal.str();
  }
  const char* arrow = r.kind == RuleKind::Strict      ? "->"
                      : r.kind == RuleKind::Defeasible ? "=>"
                                                       : "~>";
  os << " " << arrow << "_" << to_string(r.mode) << " " << r.consequent.str();
  return os.str();
}

std::string dump_conclusions(const ConclusionSet& conclusions) {
  // Ordered by atom, then positive before negative, mode C before O, Δ then ∂.
  struct Line {
    std::string atom;
    bool positive;
    Mode mode;
    int tag_rank;
    std::string text;
  };
  std::vector<Line> lines;
  for (const auto& [key, tags] : conclusions.entries()) {
    const Literal& l = key.first;
    Mode m = key.second;
    ProofTag dt = tags.delta_plus ? ProofTag::PlusDelta : ProofTag::MinusDelta;
    ProofTag pt = tags.partial_plus ? ProofTag::PlusPartial : ProofTag::MinusPartial;
    lines.push_back({l.atom.name, l.positive, m, 0,
                     to_string(dt) + "_" + to_string(m) + " " + l.str()});
    lines.push_back({l.atom.name, l.positive, m, 1,
                     to_string(pt) + "_" + to_string(m) + " " + l.str()});
  }
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    if (a.atom != b.atom) return a.atom < b.atom;
    if (a.positive != b.positive) return a.positive > b.positive;
    if (a.mode != b.mode) return a.mode < b.mode;
    return a.tag_rank < b.tag_rank;
  });
  std::string out;
  for (const Line& l : lines) {
    out += l.text;
    out += '\n';
  }
  return out;
}

std::string dump_theory(const DefeasibleTheory& theory) {
  std::ostringstream os;
  os << "facts:";
  for (const Literal& f : theory.facts()) os << " " << f.str();
  os << "\n";
  for (const Rule& r : theory.rules()) os << to_string(r) << "\n";
  for (const auto& [w, l] : theory.superiority()) os << w << " > " << l << "\n";
  return os.str();
}

}  // namespace normrl::ddl
