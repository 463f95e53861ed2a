#include "normrl/norms.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

namespace normrl::norms {

namespace {

struct Cursor {
  std::string_view text;
  int line;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line, static_cast<int>(pos) + 1, what);
  }

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool try_consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!try_consume(c)) fail(std::string("expected '") + c + "'");
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string ident() {
    skip_ws();
    if (pos >= text.size() || !ident_start(text[pos])) fail("expected identifier");
    size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    return std::string(text.substr(start, pos - start));
  }

  // ATOM := IDENT ( "(" IDENT ("," IDENT)* ")" )?  Canonicalized without
  // spaces so that token equality is plain string equality.
  std::string atom() {
    std::string name = ident();
    size_t saved = pos;
    skip_ws();
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      name += '(';
      name += ident();
      while (try_consume(',')) {
        name += ',';
        name += ident();
      }
      expect(')');
      name += ')';
    } else {
      pos = saved;
    }
    return name;
  }

  ddl::Literal literal() {
    bool positive = !try_consume('-');
    return {{atom()}, positive};
  }

  std::vector<ddl::Literal> conditions() {
    skip_ws();
    // The keyword `true` denotes the empty condition.
    size_t saved = pos;
    if (pos < text.size() && ident_start(text[pos])) {
      std::string word = ident();
      skip_ws();
      if (word == "true" && (pos >= text.size() || text[pos] == ')')) return {};
      pos = saved;
    }
    std::vector<ddl::Literal> out;
    out.push_back(literal());
    while (try_consume(',')) out.push_back(literal());
    return out;
  }
};

std::string literal_text(const ddl::Literal& l) {
  return l.positive ? l.atom.name : "-" + l.atom.name;
}

std::string conditions_text(const std::vector<ddl::Literal>& conds) {
  if (conds.empty()) return "true";
  std::string out;
  for (size_t i = 0; i < conds.size(); ++i) {
    if (i) out += ", ";
    out += literal_text(conds[i]);
  }
  return out;
}

}  // namespace

NormativeSystem parse(std::string_view text) {
  NormativeSystem sys;
  std::unordered_set<std::string> labels;
  std::vector<std::tuple<std::string, std::string, int>> pending_priorities;
  std::set<std::pair<std::string, std::string>> seen_priorities;

  int line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    std::string_view raw = text.substr(
        start, end == std::string_view::npos ? text.size() - start : end - start);
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    Cursor cur{raw, line_no};
    if (!cur.at_end() && cur.peek() != '#') {
      std::string label = cur.ident();
      if (cur.try_consume(':')) {
        if (labels.count(label)) cur.fail("duplicate label: " + label);
        labels.insert(label);
        std::string kind = cur.ident();
        cur.expect('(');
        if (kind == "C") {
          ConstitutiveNorm n;
          n.label = label;
          n.source = cur.literal();
          cur.expect(',');
          n.target = cur.literal();
          if (cur.try_consume('|')) n.conditions = cur.conditions();
          cur.expect(')');
          if (n.source == n.target) cur.fail("constitutive norm with source = target");
          sys.constitutive.push_back(std::move(n));
        } else if (kind == "O" || kind == "F" || kind == "P") {
          RegulativeNorm n;
          n.label = label;
          n.kind = kind == "O"   ? RegKind::Obligation
                   : kind == "F" ? RegKind::Prohibition
                                 : RegKind::Permission;
          n.target = cur.literal();
          cur.expect('|');
          n.conditions = cur.conditions();
          cur.expect(')');
          sys.regulative.push_back(std::move(n));
        } else {
          cur.fail("unknown norm kind '" + kind + "' (expected O, F, P or C)");
        }
      } else if (cur.try_consume('>')) {
        std::string loser = cur.ident();
        pending_priorities.emplace_back(label, loser, line_no);
      } else {
        cur.fail("expected ':' or '>' after label");
      }
      if (!cur.at_end()) cur.fail("trailing input after statement");
    }

    if (end == std::string_view::npos) break;
    start = end + 1;
  }

  for (const auto& [winner, loser, ln] : pending_priorities) {
    if (!labels.count(winner))
      throw ParseError(ln, 1, "unknown label in priority line: " + winner);
    if (!labels.count(loser))
      throw ParseError(ln, 1, "unknown label in priority line: " + loser);
    if (seen_priorities.insert({winner, loser}).second)
      sys.priorities.emplace_back(winner, loser);
  }
  return sys;
}

std::string serialize(const NormativeSystem& system) {
  std::ostringstream os;
  for (const ConstitutiveNorm& n : system.constitutive) {
    os << n.label << ": C(" << literal_text(n.source) << ", " << literal_text(n.target);
    if (!n.conditions.empty()) os << " | " << conditions_text(n.conditions);
    os << ")\n";
  }
  for (const RegulativeNorm& n : system.regulative) {
    char k = n.kind == RegKind::Obligation    ? 'O'
             : n.kind == RegKind::Prohibition ? 'F'
                                              : 'P';
    os << n.label << ": " << k << "(" << literal_text(n.target) << " | "
       << conditions_text(n.conditions) << ")\n";
  }
  for (const auto& [winner, loser] : system.priorities)
    os << winner << " > " << loser << "\n";
  return os.str();
}

CompiledNorms compile(const NormativeSystem& system,
                      const std::vector<ddl::Atom>& actions) {
  if (actions.empty()) throw CompileError("empty action alphabet");

  CompiledNorms out;
  for (const ConstitutiveNorm& n : system.constitutive) {
    ddl::Rule r;
    r.label = n.label;
    r.mode = ddl::Mode::Constitutive;
    r.kind = ddl::RuleKind::Strict;
    r.antecedents.push_back({n.source, false});
    for (const ddl::Literal& c : n.conditions) r.antecedents.push_back({c, false});
    r.consequent = n.target;
    out.rules.push_back(std::move(r));
  }
  for (const RegulativeNorm& n : system.regulative) {
    ddl::Rule r;
    r.label = n.label;
    r.mode = ddl::Mode::Deontic;
    r.kind = n.kind == RegKind::Permission ? ddl::RuleKind::Defeater
                                           : ddl::RuleKind::Defeasible;
    for (const ddl::Literal& c : n.conditions) r.antecedents.push_back({c, false});
    r.consequent = n.kind == RegKind::Prohibition ? n.target.complement() : n.target;
    out.rules.push_back(std::move(r));
  }
  for (const ddl::Atom& a : actions) {
    for (const ddl::Atom& b : actions) {
      if (a == b) continue;
      ddl::Rule r;
      r.label = "nc#" + a.name + "#" + b.name;
      r.mode = ddl::Mode::Constitutive;
      r.kind = ddl::RuleKind::Strict;
      r.antecedents.push_back({{a, true}, false});
      r.consequent = {b, false};
      out.rules.push_back(std::move(r));
    }
  }

  out.superiority = system.priorities;

  // Permissions act as exceptions: unless the author wired explicit
  // priorities for a permission, it beats every regulative rule concluding
  // the complement of its target.
  std::unordered_set<std::string> prioritized;
  for (const auto& [w, l] : system.priorities) {
    prioritized.insert(w);
    prioritized.insert(l);
  }
  for (const RegulativeNorm& p : system.regulative) {
    if (p.kind != RegKind::Permission || prioritized.count(p.label)) continue;
    ddl::Literal blocked = p.target.complement();
    for (const RegulativeNorm& q : system.regulative) {
      if (q.kind == RegKind::Permission) continue;
      ddl::Literal head =
          q.kind == RegKind::Prohibition ? q.target.complement() : q.target;
      if (head == blocked) out.superiority.emplace_back(p.label, q.label);
    }
  }
  return out;
}

}  // namespace normrl::norms
