#pragma once

// Test-only reference prover. Direct, unoptimized transliteration of the
// proof conditions, re-scanning the whole theory every pass until no tag can
// be added, then closing undecided entries negatively. Shares no machinery
// with the production engine; the fuzz suite compares the two tag-for-tag.

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "normrl/ddl.hpp"

namespace ddl_oracle {

using normrl::ddl::Antecedent;
using normrl::ddl::DefeasibleTheory;
using normrl::ddl::Literal;
using normrl::ddl::Mode;
using normrl::ddl::Rule;
using normrl::ddl::RuleKind;

struct Tags {
  std::optional<bool> delta;    // true = +Δ, false = −Δ
  std::optional<bool> partial;  // true = +∂, false = −∂
};

using Key = std::pair<Literal, Mode>;
using TagMap = std::map<Key, Tags>;

inline std::vector<Literal> universe(const DefeasibleTheory& th) {
  std::set<Literal> lits;
  auto add = [&](const Literal& l) {
    lits.insert(l);
    lits.insert(l.complement());
  };
  for (const Literal& f : th.facts()) add(f);
  for (const Rule& r : th.rules()) {
    add(r.consequent);
    for (const Antecedent& a : r.antecedents) add(a.literal);
  }
  return {lits.begin(), lits.end()};
}

// Rules that can conclude `lit` in `mode`; deontic mode includes strict
// constitutive rules (conversion candidates).
inline std::vector<const Rule*> rules_concluding(const DefeasibleTheory& th,
                                                 const Literal& lit, Mode mode) {
  std::vector<const Rule*> out;
  for (const Rule& r : th.rules()) {
    if (!(r.consequent == lit)) continue;
    if (mode == Mode::Constitutive) {
      if (r.mode == Mode::Constitutive) out.push_back(&r);
    } else {
      if (r.mode == Mode::Deontic ||
          (r.mode == Mode::Constitutive && r.kind == RuleKind::Strict))
        out.push_back(&r);
    }
  }
  return out;
}

inline bool is_supporter(const Rule& r) { return r.kind != RuleKind::Defeater; }

inline bool is_superior(const DefeasibleTheory& th, const Rule& winner,
                        const Rule& loser) {
  for (const auto& [w, l] : th.superiority())
    if (w == winner.label && l == loser.label) return true;
  return false;
}

class Prover {
 public:
  explicit Prover(const DefeasibleTheory& th) : th_(th), lits_(universe(th)) {
    for (const Literal& l : lits_) {
      tags_[{l, Mode::Constitutive}] = {};
      tags_[{l, Mode::Deontic}] = {};
    }
    run_delta();
    run_partial();
  }

  const TagMap& tags() const { return tags_; }

 private:
  bool delta_is(const Literal& l, Mode m, bool val) const {
    auto it = tags_.find({l, m});
    return it != tags_.end() && it->second.delta == val;
  }
  bool partial_is(const Literal& l, Mode m, bool val) const {
    auto it = tags_.find({l, m});
    return it != tags_.end() && it->second.partial == val;
  }

  bool conversion_context(const Rule& r, Mode m) const {
    return m == Mode::Deontic && r.mode == Mode::Constitutive;
  }

  bool delta_body(const Rule& r, Mode m) const {
    if (!conversion_context(r, m)) {
      for (const Antecedent& a : r.antecedents)
        if (!delta_is(a.literal, a.deontic ? Mode::Deontic : Mode::Constitutive, true))
          return false;
      return true;
    }
    bool any_deontic = false;
    for (const Antecedent& a : r.antecedents) {
      if (a.deontic) {
        if (!delta_is(a.literal, Mode::Deontic, true)) return false;
        any_deontic = true;
      } else {
        bool c = delta_is(a.literal, Mode::Constitutive, true);
        bool o = delta_is(a.literal, Mode::Deontic, true);
        if (!c && !o) return false;
        if (o) any_deontic = true;
      }
    }
    return any_deontic;
  }

  void run_delta() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Literal& l : lits_) {
        for (Mode m : {Mode::Constitutive, Mode::Deontic}) {
          if (tags_[{l, m}].delta == true) continue;
          bool provable = false;
          if (m == Mode::Constitutive && th_.facts().count(l)) provable = true;
          if (!provable) {
            for (const Rule* r : rules_concluding(th_, l, m)) {
              if (r->kind != RuleKind::Strict) continue;
              if (delta_body(*r, m)) {
                provable = true;
                break;
              }
            }
          }
          if (provable) {
            tags_[{l, m}].delta = true;
            changed = true;
          }
        }
      }
    }
    for (auto& [key, t] : tags_)
      if (!t.delta.has_value()) t.delta = false;
  }

  bool applicable(const Rule& r, Mode m) const {
    if (!conversion_context(r, m)) {
      for (const Antecedent& a : r.antecedents)
        if (!partial_is(a.literal, a.deontic ? Mode::Deontic : Mode::Constitutive, true))
          return false;
      return true;
    }
    bool any_deontic = false;
    for (const Antecedent& a : r.antecedents) {
      if (a.deontic) {
        if (!partial_is(a.literal, Mode::Deontic, true)) return false;
        any_deontic = true;
      } else {
        bool c = partial_is(a.literal, Mode::Constitutive, true);
        bool o = partial_is(a.literal, Mode::Deontic, true);
        if (!c && !o) return false;
        if (o) any_deontic = true;
      }
    }
    return any_deontic;
  }

  bool discarded(const Rule& r, Mode m) const {
    if (!conversion_context(r, m)) {
      for (const Antecedent& a : r.antecedents)
        if (partial_is(a.literal, a.deontic ? Mode::Deontic : Mode::Constitutive, false))
          return true;
      return false;
    }
    bool all_deontically_refuted = true;
    for (const Antecedent& a : r.antecedents) {
      if (a.deontic) {
        if (partial_is(a.literal, Mode::Deontic, false)) return true;
      } else {
        if (partial_is(a.literal, Mode::Constitutive, false) &&
            partial_is(a.literal, Mode::Deontic, false))
          return true;
      }
      if (!partial_is(a.literal, Mode::Deontic, false)) all_deontically_refuted = false;
    }
    return all_deontically_refuted;
  }

  bool plus_partial_holds(const Literal& l, Mode m) const {
    if (delta_is(l, m, true)) return true;
    if (!delta_is(l.complement(), m, false)) return false;
    auto supporters = rules_concluding(th_, l, m);
    bool supported = false;
    for (const Rule* r : supporters)
      if (is_supporter(*r) && applicable(*r, m)) {
        supported = true;
        break;
      }
    if (!supported) return false;
    for (const Rule* s : rules_concluding(th_, l.complement(), m)) {
      if (discarded(*s, m)) continue;
      bool defeated = false;
      for (const Rule* t : supporters)
        if (is_supporter(*t) && applicable(*t, m) && is_superior(th_, *t, *s)) {
          defeated = true;
          break;
        }
      if (!defeated) return false;
    }
    return true;
  }

  bool minus_partial_holds(const Literal& l, Mode m) const {
    if (!delta_is(l, m, false)) return false;
    if (delta_is(l.complement(), m, true)) return true;
    auto supporters = rules_concluding(th_, l, m);
    bool all_discarded = true;
    for (const Rule* r : supporters)
      if (is_supporter(*r) && !discarded(*r, m)) {
        all_discarded = false;
        break;
      }
    if (all_discarded) return true;
    for (const Rule* s : rules_concluding(th_, l.complement(), m)) {
      if (!applicable(*s, m)) continue;
      bool answered = false;
      for (const Rule* t : supporters)
        if (is_supporter(*t) && is_superior(th_, *t, *s) && !discarded(*t, m)) {
          answered = true;
          break;
        }
      if (!answered) return true;
    }
    return false;
  }

  void run_partial() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Literal& l : lits_) {
        for (Mode m : {Mode::Constitutive, Mode::Deontic}) {
          if (tags_[{l, m}].partial.has_value()) continue;
          if (plus_partial_holds(l, m)) {
            tags_[{l, m}].partial = true;
            changed = true;
          } else if (minus_partial_holds(l, m)) {
            tags_[{l, m}].partial = false;
            changed = true;
          }
        }
      }
    }
    for (auto& [key, t] : tags_)
      if (!t.partial.has_value()) t.partial = false;
  }

  const DefeasibleTheory& th_;
  std::vector<Literal> lits_;
  TagMap tags_;
};

inline TagMap prove(const DefeasibleTheory& th) { return Prover(th).tags(); }

}  // namespace ddl_oracle
