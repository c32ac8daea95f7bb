#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "preflog/logic.hpp"

namespace preflog {

// Def 2 verdict with deterministic first witnesses under the canonical
// model enumeration order. A witness (m, n) has n ≼ m and exhibits the
// violated direction: downward m |= f, n |/= f; upward n |= f, m |/= f.
template <typename Model>
struct PersistenceVerdict {
  bool downward = true;
  bool upward = true;
  std::optional<std::pair<Model, Model>> downward_witness;
  std::optional<std::pair<Model, Model>> upward_witness;
};

template <PreferentialLogicT L>
PersistenceVerdict<typename L::Model> persistence_oracle(const L& logic,
                                                         const Formula& f) {
  const auto& ms = logic.models();
  std::vector<uint8_t> sat_v(ms.size());
  for (size_t i = 0; i < ms.size(); ++i) sat_v[i] = logic.sat(ms[i], f);
  PersistenceVerdict<typename L::Model> v;
  for (size_t mi = 0; mi < ms.size(); ++mi) {
    for (size_t ni = 0; ni < ms.size(); ++ni) {
      if (!logic.leq(ms[ni], ms[mi])) continue;
      if (v.downward && sat_v[mi] && !sat_v[ni]) {
        v.downward = false;
        v.downward_witness = {ms[mi], ms[ni]};
      }
      if (v.upward && sat_v[ni] && !sat_v[mi]) {
        v.upward = false;
        v.upward_witness = {ms[mi], ms[ni]};
      }
      if (!v.downward && !v.upward) return v;
    }
  }
  return v;
}

// Def 13 over finite corpora: no premise/conclusion pair goes from a
// certain "entailed" to a certain "not entailed" when f is conjoined.
// Unknown verdicts on either side are skipped.
template <PreferentialLogicT L>
bool respects_monotonicity_oracle(const L& logic, const Formula& f,
                                  const std::vector<Formula>& premises,
                                  const std::vector<Formula>& conclusions) {
  for (const Formula& alpha : premises)
    for (const Formula& beta : conclusions)
      if (logic.entails(alpha, beta) == Verdict::True &&
          logic.entails(land(alpha, f), beta) == Verdict::False)
        return false;
  return true;
}

// Prop 25's exact model-level right-hand side: every class-minimal model
// of alpha & f is a class-minimal model of alpha.
template <PreferentialLogicT L>
bool respects_monotonicity_fixed(const L& logic, const Formula& alpha,
                                 const Formula& f) {
  auto min_a = logic.minimal_models_in_class(alpha);
  for (const auto& m : logic.minimal_models_in_class(land(alpha, f))) {
    bool found = false;
    for (const auto& n : min_a)
      if (n == m) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

// Def 28 over finite corpora.
template <PreferentialLogicT L>
bool conservative_oracle(const L& logic, const Formula& beta,
                         const std::vector<Formula>& premises,
                         const std::vector<Formula>& phis) {
  for (const Formula& alpha : premises)
    for (const Formula& phi : phis)
      if (logic.entails(alpha, beta) == Verdict::True &&
          logic.entails(land(alpha, phi), beta) == Verdict::False)
        return false;
  return true;
}

// Prop 36's exact right-hand side.
template <PreferentialLogicT L>
bool conservative_fixed(const L& logic, const Formula& alpha, const Formula& beta) {
  return logic.classical_entails(alpha, beta);
}

// Def 21 (generalized for the circumscription logics, whose witness_target
// quantifies over isomorphic copies): every enumerated n satisfies the
// witness of m exactly when m's copy sits ≼-below n.
template <PreferentialLogicT L>
bool check_expressibility(const L& logic) {
  const auto& ms = logic.models();
  for (const auto& m : ms) {
    std::optional<Formula> w = logic.preference_witness(m);
    if (!w) throw std::invalid_argument("no witness constructor for this logic");
    for (const auto& n : ms)
      if (logic.sat(n, *w) != logic.witness_target(m, n)) return false;
  }
  return true;
}

// Mechanizes the Thm 22 proof at instance level: from a downward
// persistence violation (m, n) build alpha = phi_n & (f -> phi_m) and
// beta = ~f, and confirm alpha |=~ beta while alpha & f |/=~ beta.
// Throws std::invalid_argument when f is downward persistent.
template <PreferentialLogicT L>
bool theorem22_check(const L& logic, const Formula& f) {
  auto v = persistence_oracle(logic, f);
  if (v.downward)
    throw std::invalid_argument("formula is downward persistent; nothing to construct");
  const auto& [m, n] = *v.downward_witness;
  std::optional<Formula> phi_m = logic.preference_witness(m);
  std::optional<Formula> phi_n = logic.preference_witness(n);
  if (!phi_m || !phi_n) throw std::invalid_argument("no witness constructor");
  Formula alpha = land(*phi_n, implies(f, *phi_m));
  Formula beta = lnot(f);
  return logic.entails(alpha, beta) == Verdict::True &&
         logic.entails(land(alpha, f), beta) == Verdict::False;
}

// Prop 30's construction: from an upward persistence violation (m, n) of
// beta, alpha = phi_n and phi = phi_m give a conservativity violation.
template <PreferentialLogicT L>
bool prop30_check(const L& logic, const Formula& beta) {
  auto v = persistence_oracle(logic, beta);
  if (v.upward)
    throw std::invalid_argument("formula is upward persistent; nothing to construct");
  const auto& [m, n] = *v.upward_witness;
  std::optional<Formula> phi_m = logic.preference_witness(m);
  std::optional<Formula> phi_n = logic.preference_witness(n);
  if (!phi_m || !phi_n) throw std::invalid_argument("no witness constructor");
  return logic.entails(*phi_n, beta) == Verdict::True &&
         logic.entails(land(*phi_n, *phi_m), beta) == Verdict::False;
}

// Prop 31: f upward persistent iff ~f downward persistent.
template <PreferentialLogicT L>
bool prop31_check(const L& logic, const Formula& f) {
  return persistence_oracle(logic, f).upward ==
         persistence_oracle(logic, lnot(f)).downward;
}

// Prop 27's two characterizations agree on smooth logics.
template <PreferentialLogicT L>
bool prop27_check(const L& logic, const Formula& alpha, const Formula& phi) {
  auto min_conj = logic.minimal_models_in_class(land(alpha, phi));
  auto min_a = logic.minimal_models_in_class(alpha);
  bool lhs = true;
  for (const auto& m : min_conj) {
    bool in = false;
    for (const auto& n : min_a) in = in || n == m;
    lhs = lhs && in;
  }
  bool rhs = true;
  for (const auto& m : logic.models()) {
    if (!(logic.sat(m, alpha) && logic.sat(m, phi))) continue;
    bool found = false;
    for (const auto& n : min_a)
      if (logic.leq(n, m) && logic.sat(n, phi)) {
        found = true;
        break;
      }
    rhs = rhs && found;
  }
  return lhs == rhs;
}

// Enumerates members of a syntactic class up to size_bound, deduplicated by
// their truth vector over the enumerated models, and returns one member
// semantically equivalent to f if the bounded search finds it. Absence is
// inconclusive (Thms 16/18/20 completeness directions are proof results).
// Supports Diam/Box (S5 signatures) and Td/Tb (TEL); the circumscription
// classes are not searched.
template <PreferentialLogicT L>
std::optional<Formula> bounded_completeness_search(const L& logic, const Formula& f,
                                                   SyntacticClass cls,
                                                   size_t size_bound);

}  // namespace preflog
