#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "preflog/formula.hpp"

namespace preflog {

// A propositional valuation over Signature.atoms, encoded so that the
// numeric order of ids equals the lexicographic order of the bit-strings
// printed in reports (atom 0 is the most significant bit).
using WorldId = uint32_t;

// A normal S5 model: a non-empty set of valuations (Def 4), stored as a
// bitmask over the 2^|atoms| valuations. With the enumeration bound of 4
// atoms there are at most 16 valuations, so 32 bits suffice.
struct S5Model {
  uint32_t mask = 0;
  bool operator==(const S5Model&) const = default;
  bool operator<(const S5Model& o) const { return mask < o.mask; }
};

// Degree-of-knowledge order (Def 6): m1 is preferred to m2 iff m1 has at
// least the worlds of m2 (more possibilities, less knowledge).
inline bool dok_leq(S5Model m1, S5Model m2) {
  return (m1.mask & m2.mask) == m2.mask;
}

// Ground S5 over a fixed propositional signature: normal-S5 satisfaction,
// exhaustive model enumeration, and preferential entailment by minimal
// models (Defs 1, 4, 6, 7). All operations are pure; instances are
// immutable and safe to share across threads.
class GroundS5 {
 public:
  // Throws BoundExceeded if the signature has more atoms than the bound
  // (or more than 4, the structural ceiling of the mask encoding).
  explicit GroundS5(Signature sig, int bound = 4);

  const Signature& sig() const { return sig_; }
  int num_atoms() const { return static_cast<int>(sig_.atoms().size()); }
  int num_worlds() const { return 1 << num_atoms(); }
  uint32_t full_mask() const { return (1u << num_worlds()) - 1; }

  bool world_sat(WorldId w, const Formula& propositional) const;
  // (model, world) |= f per Def 4; throws if world is not in the model.
  bool sat(const S5Model& m, WorldId world, const Formula& f) const;
  // Model-level truth; for subjective f this is world-independent (Prop 5).
  bool sat(const S5Model& m, const Formula& f) const;

  // All 2^(2^|atoms|) - 1 normal S5 models in canonical (mask) order.
  const std::vector<S5Model>& models() const { return models_; }

  std::vector<S5Model> minimal_models(const Formula& alpha) const;
  bool entails(const Formula& alpha, const Formula& beta) const;
  // Monotonic S5 consequence: every model of alpha satisfies beta.
  bool entails_classical(const Formula& alpha, const Formula& beta) const;
  // Honest premises have exactly one minimal model.
  bool honest(const Formula& alpha) const;

  // Smoothness (Def 26) of the sample formulas: every model of alpha has a
  // minimal model of alpha below it.
  bool smooth(const std::vector<Formula>& sample) const;

  // The conjunction of literals describing valuation w (Prop 23's alpha_m).
  Formula valuation_formula(WorldId w) const;
  // Def 21 witness: satisfied by N exactly when m ≼ N (Prop 23's phi_M).
  Formula preference_witness(const S5Model& m) const;
  // Satisfied exactly by the model m itself (Prop 25's alpha_m).
  Formula point_formula(const S5Model& m) const;

  std::string serialize(const S5Model& m) const;   // e.g. "10,11"
  S5Model parse_model(const std::string& s) const;

  // Requires a subjective formula; throws std::invalid_argument otherwise
  // (Def 7 fixes Ground S5 to the subjective fragment).
  void require_subjective(const Formula& f) const;

 private:
  Signature sig_;
  std::vector<S5Model> models_;

  // Bit vector over all model masks; index = mask.
  std::vector<uint8_t> sat_table(const Formula& f) const;
  std::vector<uint8_t> strict_superset_reach(const std::vector<uint8_t>& in) const;
};

}  // namespace preflog
