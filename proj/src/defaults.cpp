#include "preflog/defaults.hpp"

#include <algorithm>
#include <sstream>

#include "preflog/syntactic.hpp"

namespace preflog {

namespace {

void require_propositional(const Formula& f, const char* what) {
  if (!is_propositional(f))
    throw std::invalid_argument(std::string(what) + " must be propositional: " +
                                to_string(f));
}

void validate(const DefaultTheory& theory) {
  for (const Formula& w : theory.facts) require_propositional(w, "fact");
  for (const DefaultRule& r : theory.rules) {
    require_propositional(r.pre, "prerequisite");
    require_propositional(r.just, "justification");
    require_propositional(r.cons, "consequent");
  }
}

}  // namespace

Formula default_to_mtel(const DefaultTheory& theory) {
  validate(theory);
  std::vector<Formula> rule_parts;
  for (const DefaultRule& r : theory.rules)
    rule_parts.push_back(always(implies(
        land(know(r.pre), glob(lnot(know(lnot(r.just))))), glob(know(r.cons)))));
  std::vector<Formula> fact_parts;
  for (const Formula& w : theory.facts) fact_parts.push_back(know(w));

  if (rule_parts.empty() && fact_parts.empty()) return top();
  if (rule_parts.empty()) return conj(fact_parts);
  if (fact_parts.empty()) return conj(rule_parts);
  return land(conj(rule_parts), conj(fact_parts));
}

Verdict sceptical_consequence(const Mtel& mtel, const DefaultTheory& theory,
                              const Formula& phi, Horizon hz) {
  check_well_formed(phi, mtel.sig(), Lang::S5);
  require_propositional(phi, "query");
  return mtel.entails(default_to_mtel(theory), future(know(phi)), hz);
}

Verdict sceptical_consequence(const Mtel& mtel, const DefaultTheory& theory,
                              const Formula& phi) {
  Formula psi = default_to_mtel(theory);
  Formula goal = future(know(phi));
  return mtel.entails(psi, goal, mtel.default_horizon(psi, goal));
}

namespace {

uint32_t prop_worlds(const GroundS5& s5, const Formula& f) {
  uint32_t mask = 0;
  for (int w = 0; w < s5.num_worlds(); ++w)
    if (s5.world_sat(w, f)) mask |= 1u << w;
  return mask;
}

}  // namespace

std::vector<uint32_t> reiter_extensions(const GroundS5& s5, const DefaultTheory& theory) {
  validate(theory);
  uint32_t w_mask = s5.full_mask();
  for (const Formula& f : theory.facts) w_mask &= prop_worlds(s5, f);

  const size_t n_rules = theory.rules.size();
  if (n_rules > 20) throw BoundExceeded("too many default rules");
  std::vector<uint32_t> pre_w(n_rules), just_w(n_rules), cons_w(n_rules);
  for (size_t i = 0; i < n_rules; ++i) {
    pre_w[i] = prop_worlds(s5, theory.rules[i].pre);
    just_w[i] = prop_worlds(s5, theory.rules[i].just);
    cons_w[i] = prop_worlds(s5, theory.rules[i].cons);
  }

  std::vector<uint32_t> extensions;
  for (uint32_t guess_set = 0; guess_set < (1u << n_rules); ++guess_set) {
    // candidate E = Th(W + consequents of the guessed generating defaults)
    uint32_t e = w_mask;
    for (size_t i = 0; i < n_rules; ++i)
      if ((guess_set >> i) & 1u) e &= cons_w[i];

    // grounded closure from W, with justification consistency against E
    uint32_t a = w_mask;
    bool grew = true;
    while (grew) {
      grew = false;
      for (size_t i = 0; i < n_rules; ++i) {
        bool pre_holds = (a & ~pre_w[i]) == 0;          // A |- pre
        bool just_consistent = (e & just_w[i]) != 0;    // ~just not in E
        if (pre_holds && just_consistent && (a & ~cons_w[i]) != 0) {
          a &= cons_w[i];
          grew = true;
        }
      }
    }
    // E is an extension iff it reproduces itself as the grounded closure
    if (a == e && std::find(extensions.begin(), extensions.end(), e) == extensions.end())
      extensions.push_back(e);
  }
  std::sort(extensions.begin(), extensions.end());
  return extensions;
}

bool reiter_sceptical(const GroundS5& s5, const DefaultTheory& theory,
                      const Formula& phi) {
  uint32_t phi_w = prop_worlds(s5, phi);
  for (uint32_t e : reiter_extensions(s5, theory))
    if ((e & ~phi_w) != 0) return false;
  return true;
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

DefaultTheory parse_default_theory(const std::string& text, const Signature& sig) {
  DefaultTheory theory;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.rfind("fact:", 0) == 0) {
      theory.facts.push_back(parse(t.substr(5), sig, Lang::S5));
      continue;
    }
    if (t.rfind("default:", 0) == 0) {
      std::string body = t.substr(8);
      size_t colon = body.find(':');
      size_t slash = body.find('/');
      if (colon == std::string::npos || slash == std::string::npos || slash < colon)
        throw ParseError("default line needs `pre : just / cons` (line " +
                             std::to_string(lineno) + ")",
                         0);
      DefaultRule r;
      r.pre = parse(trim(body.substr(0, colon)), sig, Lang::S5);
      r.just = parse(trim(body.substr(colon + 1, slash - colon - 1)), sig, Lang::S5);
      r.cons = parse(trim(body.substr(slash + 1)), sig, Lang::S5);
      theory.rules.push_back(std::move(r));
      continue;
    }
    throw ParseError("expected `fact:` or `default:` (line " + std::to_string(lineno) + ")",
                     0);
  }
  for (const Formula& f : theory.facts) check_well_formed(f, sig, Lang::S5);
  return theory;
}

}  // namespace preflog
