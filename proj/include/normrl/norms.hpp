#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "normrl/ddl.hpp"

// The norm language: a line-based surface syntax for normative systems and
// its compilation to defeasible deontic rules.
//
//   file      := (stmt NEWLINE)*
//   stmt      := norm | priority | comment | blank
//   norm      := LABEL ":" head
//   head      := ("O"|"F"|"P") "(" lit "|" conds ")"
//              | "C" "(" lit "," lit ("|" conds)? ")"
//   conds     := "true" | lit ("," lit)*
//   lit       := "-"? ATOM
//   ATOM      := IDENT ( "(" IDENT ("," IDENT)* ")" )?
//   priority  := LABEL ">" LABEL
//   comment   := "#" any
namespace normrl::norms {

enum class RegKind { Obligation, Prohibition, Permission };

// O(target | conditions), F(target | conditions) or P(target | conditions);
// an empty condition list means the norm is unconditional.
struct RegulativeNorm {
  std::string label;
  RegKind kind = RegKind::Obligation;
  ddl::Literal target;
  std::vector<ddl::Literal> conditions;
  bool operator==(const RegulativeNorm&) const = default;
};

// C(source, target | conditions): in the given context, source counts as
// target.
struct ConstitutiveNorm {
  std::string label;
  ddl::Literal source;
  ddl::Literal target;
  std::vector<ddl::Literal> conditions;
  bool operator==(const ConstitutiveNorm&) const = default;
};

struct NormativeSystem {
  std::vector<ConstitutiveNorm> constitutive;
  std::vector<RegulativeNorm> regulative;
  // Ordered (winner, loser) label pairs; duplicates are collapsed at parse.
  std::vector<std::pair<std::string, std::string>> priorities;
  bool operator==(const NormativeSystem&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + what),
        line(line),
        col(col) {}
  int line;
  int col;
};

class CompileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

NormativeSystem parse(std::string_view text);

// Canonical text form; parse(serialize(s)) is structurally equal to s.
std::string serialize(const NormativeSystem& system);

struct CompiledNorms {
  std::vector<ddl::Rule> rules;
  std::vector<std::pair<std::string, std::string>> superiority;
};

// Compiles norms plus non-concurrence constraints over the action alphabet:
//   O(p|q)   ->  q =>_O p
//   F(p|q)   ->  q =>_O not p
//   P(p|q)   ->  q ~>_O p            (defeater)
//   C(x,y|q) ->  x, q ->_C y         (strict)
//   actions  ->  a ->_C not a' for every ordered pair of distinct actions
// Explicit priorities pass through; a permission that appears in no explicit
// priority is made superior to every compiled regulative rule concluding the
// complement of its target.
CompiledNorms compile(const NormativeSystem& system,
                      const std::vector<ddl::Atom>& actions);

}  // namespace normrl::norms
