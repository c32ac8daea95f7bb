#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "preflog/formula.hpp"
#include "preflog/s5.hpp"

namespace preflog {

enum class Verdict { True, False, Unknown };
const char* to_string(Verdict v);

// A conservative TEL model (Def 9): a knowledge-non-increasing sequence of
// S5 models that is eventually constant, stored as the strictly shrinking
// state chain plus the times at which the state switches. states[i] holds
// on [changes[i-1], changes[i]) with changes[-1] = 0 and the last state
// holding forever.
class TelcModel {
 public:
  TelcModel(std::vector<S5Model> states, std::vector<int> changes);

  const std::vector<S5Model>& states() const { return states_; }
  const std::vector<int>& changes() const { return changes_; }
  const S5Model& state_at(int t) const;
  int last_change() const { return changes_.empty() ? 0 : changes_.back(); }

  bool operator==(const TelcModel&) const = default;
  bool operator<(const TelcModel& o) const;

 private:
  std::vector<S5Model> states_;
  std::vector<int> changes_;
};

// Pointwise degree-of-knowledge order on TELC models (Def 10.1).
bool telc_leq(const TelcModel& m1, const TelcModel& m2);

// Enumeration parameters: canonical models with change points in [1, h],
// plus postpone_rounds extra delay steps probed during certification.
struct Horizon {
  int h = 3;
  int postpone_rounds = 2;
};

// Output of the bounded minimal-model search. `certified` survived every
// postponement probe; `uncertified` were beaten only by a postponed
// variant, with `divergent` marking those whose variant chain kept
// satisfying the premise at every probed delay (the Prop 34 "this moment
// can always be postponed" pattern) — they are excluded from verdicts.
struct MtelMinimalResult {
  std::vector<TelcModel> certified;
  std::vector<TelcModel> uncertified;
  std::vector<bool> divergent;  // parallel to uncertified
};

// Minimal temporal epistemic logic over a fixed signature (Defs 8-10).
// Exhaustive over all canonical TELC models for up to 2 atoms; for larger
// signatures only "flat" formulas (every K/M argument propositional) are
// handled, via a sound restriction of the search to the intersection
// lattice of the K-subformula world sets.
class Mtel {
 public:
  explicit Mtel(Signature sig, int bound = 4);

  const Signature& sig() const { return s5_.sig(); }
  const GroundS5& s5() const { return s5_; }

  // Def 9 truth at a time point; exact for arbitrary t via the constant tail.
  bool sat(const TelcModel& m, int t, const Formula& f) const;
  // Model-level truth: (M, 0) |= f.
  bool sat(const TelcModel& m, const Formula& f) const;

  // All canonical TELC models with change points ≤ h (2 atoms at most).
  std::vector<TelcModel> models(int h) const;

  MtelMinimalResult minimal_models(const Formula& f, Horizon hz) const;
  Verdict entails(const Formula& alpha, const Formula& beta, Horizon hz) const;
  Verdict entails(const Formula& alpha, const Formula& beta) const;
  // h = temporal_depth(alpha & beta) + 2^|atoms| - 1: room for every
  // strict-decrease schedule, plus two postponement probes.
  Horizon default_horizon(const Formula& alpha, const Formula& beta) const;

  // Bounded ~ of Def 17.2: agreement on all enumerated models with change
  // points ≤ hz.h + max temporal depth. Sound for refutation only.
  bool sim_equiv(const Formula& f, const Formula& g, Horizon hz) const;

  // Monotonic consequence over the enumerated class.
  bool classical_entails(const Formula& alpha, const Formula& beta, Horizon hz) const;

  TelcModel totally_ignorant() const;     // Def 33's M^ti
  bool is_totally_ignorant(const TelcModel& m) const;

  // P^i T & H^(i+1) _|_ : true exactly at time i.
  Formula at_time(int i) const;
  // Def 21 witness per Prop 23: AND_i [](at_i -> phi_state(i)).
  Formula preference_witness(const TelcModel& m) const;
  // Satisfied, within the class of models with change points ≤ h, exactly
  // by m itself.
  Formula point_formula(const TelcModel& m, int h) const;

  std::string serialize(const TelcModel& m) const;  // state@[a,b) ; ...

  void require_subjective_tel(const Formula& f) const;

 private:
  GroundS5 s5_;

  std::vector<TelcModel> enumerate(const std::vector<uint32_t>& state_masks, int h) const;
  // Intersection closure of the K-subformula world sets (flat formulas).
  std::optional<std::vector<uint32_t>> flat_state_lattice(const Formula& f) const;
};

}  // namespace preflog
