#pragma once

#include <set>
#include <string>
#include <vector>

#include "preflog/formula.hpp"

namespace preflog {

// A finite first-order structure: an explicit domain (a subset of the
// enumeration universe, so the class is closed under substructures) and
// one tuple set per signature predicate. Equality is identity on element
// ids and is not stored (Def 12.1).
struct FoStructure {
  std::vector<int> domain;  // sorted
  std::vector<std::set<std::vector<int>>> exts;  // aligned with Signature.preds()

  bool operator==(const FoStructure&) const = default;
  bool operator<(const FoStructure& o) const {
    if (domain != o.domain) return domain < o.domain;
    return exts < o.exts;
  }
};

using VarEnv = std::vector<std::pair<std::string, int>>;

// Tarskian satisfaction; quantifiers range over s.domain. Free variables
// must be bound by env. Throws on unbound variables or arity mismatch.
bool fo_sat(const FoStructure& s, const Signature& sig, const Formula& f,
            const VarEnv& env = {});

// M ≤_P N (Def 12.1): same domain, same interpretation of the other
// predicates, and P^M ⊆ P^N.
bool pred_leq(const FoStructure& m, const FoStructure& n, const Signature& sig,
              const std::string& p);

// N ≤_d M (Def 12.2): dom(N) ⊆ dom(M) and every interpretation in N is the
// restriction of the one in M.
bool dom_leq(const FoStructure& n, const FoStructure& m);

enum class CircMode { Pred, Dom };

// Finite predicate/domain circumscription at desk scale: all labeled
// structures whose domain is a nonempty subset of {0..max_size-1},
// evaluated exhaustively (Def 12.3).
class FinCirc {
 public:
  // `pred` names the circumscribed predicate in Pred mode (ignored in Dom
  // mode). Throws BoundExceeded when the structure count is infeasible.
  FinCirc(Signature sig, CircMode mode, std::string pred, int max_size);

  const Signature& sig() const { return sig_; }
  CircMode mode() const { return mode_; }
  const std::string& circ_pred() const { return pred_; }
  int max_size() const { return max_size_; }

  const std::vector<FoStructure>& models() const { return models_; }
  bool sat(const FoStructure& m, const Formula& f) const;
  bool leq(const FoStructure& a, const FoStructure& b) const;

  std::vector<FoStructure> minimal_models(const Formula& alpha) const;
  bool entails(const Formula& alpha, const Formula& beta) const;
  bool entails_classical(const Formula& alpha, const Formula& beta) const;
  bool smooth(const std::vector<Formula>& sample) const;

  // Prop 23 witness. Together with witness_target this realizes the
  // generalized Def 21: n |= witness(m) iff some isomorphic copy of m is
  // ≤-below n (labeled structures admit no label-pinning formulas).
  Formula preference_witness(const FoStructure& m) const;
  bool witness_target(const FoStructure& m, const FoStructure& n) const;

  // Performance toggle for entails/minimal_models: skip structures that are
  // not the least representative of their isomorphism class. Never changes
  // entailment verdicts (asserted in tests).
  void set_dedup_isomorphic(bool on) { dedup_ = on; }
  bool dedup_isomorphic() const { return dedup_; }

  std::string serialize(const FoStructure& m) const;

  void require_sentence(const Formula& f) const;

 private:
  Signature sig_;
  CircMode mode_;
  std::string pred_;
  int pred_index_ = -1;
  int max_size_;
  bool dedup_ = false;
  std::vector<FoStructure> models_;
  std::vector<char> canonical_;  // least iso representative flags

  bool isomorphic_le(const FoStructure& m, const FoStructure& n, bool exact) const;
};

}  // namespace preflog
