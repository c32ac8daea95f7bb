#pragma once

#include <concepts>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "preflog/defaults.hpp"
#include "preflog/fo.hpp"
#include "preflog/formula.hpp"
#include "preflog/s5.hpp"
#include "preflog/syntactic.hpp"
#include "preflog/tel.hpp"

namespace preflog {

// The Def 1 package the persistence lab works against: a finite enumerated
// model class, satisfaction, the preference order, and entailment. The
// enumerated class is itself a preferential logic, so the paper's
// order-level results are checked exactly on it.
template <typename L>
concept PreferentialLogicT = requires(const L& l, const typename L::Model& m,
                                      const Formula& f) {
  { l.models() } -> std::convertible_to<const std::vector<typename L::Model>&>;
  { l.sat(m, f) } -> std::convertible_to<bool>;
  { l.leq(m, m) } -> std::convertible_to<bool>;
  { l.entails(f, f) } -> std::convertible_to<Verdict>;
  { l.classical_entails(f, f) } -> std::convertible_to<bool>;
  { l.serialize(m) } -> std::convertible_to<std::string>;
};

// ---------------------------------------------------------------------------

class GroundS5Logic {
 public:
  using Model = S5Model;

  explicit GroundS5Logic(Signature sig, int bound = 4)
      : engine_(std::make_shared<GroundS5>(std::move(sig), bound)) {}

  const GroundS5& engine() const { return *engine_; }
  const Signature& signature() const { return engine_->sig(); }
  const std::vector<Model>& models() const { return engine_->models(); }
  bool sat(const Model& m, const Formula& f) const { return engine_->sat(m, f); }
  bool leq(const Model& a, const Model& b) const { return dok_leq(a, b); }
  Verdict entails(const Formula& a, const Formula& b) const {
    return engine_->entails(a, b) ? Verdict::True : Verdict::False;
  }
  bool classical_entails(const Formula& a, const Formula& b) const {
    return engine_->entails_classical(a, b);
  }
  std::vector<Model> minimal_models_in_class(const Formula& a) const {
    return engine_->minimal_models(a);
  }
  std::optional<Formula> preference_witness(const Model& m) const {
    return engine_->preference_witness(m);
  }
  bool witness_target(const Model& m, const Model& n) const { return leq(m, n); }
  bool smooth(const std::vector<Formula>& sample) const { return engine_->smooth(sample); }
  std::string serialize(const Model& m) const { return engine_->serialize(m); }
  std::string name() const { return "gs5"; }

  SyntacticClass downward_class() const { return SyntacticClass::Diam; }
  SyntacticClass upward_class() const { return SyntacticClass::Box; }
  std::string class_pred() const { return {}; }

 private:
  std::shared_ptr<const GroundS5> engine_;
};

// ---------------------------------------------------------------------------

class MtelLogic {
 public:
  using Model = TelcModel;

  MtelLogic(Signature sig, Horizon hz, int bound = 4)
      : engine_(std::make_shared<Mtel>(std::move(sig), bound)), hz_(hz) {}

  const Mtel& engine() const { return *engine_; }
  const Signature& signature() const { return engine_->sig(); }
  Horizon horizon() const { return hz_; }

  const std::vector<Model>& models() const {
    if (models_cache_.empty()) models_cache_ = engine_->models(hz_.h);
    return models_cache_;
  }
  bool sat(const Model& m, const Formula& f) const { return engine_->sat(m, f); }
  bool leq(const Model& a, const Model& b) const { return telc_leq(a, b); }
  // Certified three-valued entailment at this handle's horizon.
  Verdict entails(const Formula& a, const Formula& b) const {
    return engine_->entails(a, b, hz_);
  }
  bool classical_entails(const Formula& a, const Formula& b) const {
    return engine_->classical_entails(a, b, hz_);
  }
  // Exact minimality within the enumerated class (the lab-side notion; the
  // engine's certified minimality is available via engine()).
  std::vector<Model> minimal_models_in_class(const Formula& a) const {
    std::vector<Model> sat_set;
    for (const Model& m : models())
      if (engine_->sat(m, a)) sat_set.push_back(m);
    std::vector<Model> out;
    for (const Model& m : sat_set) {
      bool minimal = true;
      for (const Model& n : sat_set)
        if (!(n == m) && telc_leq(n, m)) {
          minimal = false;
          break;
        }
      if (minimal) out.push_back(m);
    }
    return out;
  }
  std::optional<Formula> preference_witness(const Model& m) const {
    return engine_->preference_witness(m);
  }
  bool witness_target(const Model& m, const Model& n) const { return leq(m, n); }
  std::string serialize(const Model& m) const { return engine_->serialize(m); }
  std::string name() const { return "mtel"; }

  SyntacticClass downward_class() const { return SyntacticClass::Td; }
  SyntacticClass upward_class() const { return SyntacticClass::Tb; }
  std::string class_pred() const { return {}; }

 private:
  std::shared_ptr<const Mtel> engine_;
  Horizon hz_;
  mutable std::vector<Model> models_cache_;
};

// ---------------------------------------------------------------------------

class FinCircLogic {
 public:
  using Model = FoStructure;

  FinCircLogic(Signature sig, CircMode mode, std::string pred, int max_size)
      : engine_(std::make_shared<FinCirc>(std::move(sig), mode, std::move(pred),
                                          max_size)) {}

  const FinCirc& engine() const { return *engine_; }
  const Signature& signature() const { return engine_->sig(); }
  const std::vector<Model>& models() const { return engine_->models(); }
  bool sat(const Model& m, const Formula& f) const { return engine_->sat(m, f); }
  bool leq(const Model& a, const Model& b) const { return engine_->leq(a, b); }
  Verdict entails(const Formula& a, const Formula& b) const {
    return engine_->entails(a, b) ? Verdict::True : Verdict::False;
  }
  bool classical_entails(const Formula& a, const Formula& b) const {
    return engine_->entails_classical(a, b);
  }
  std::vector<Model> minimal_models_in_class(const Formula& a) const {
    return engine_->minimal_models(a);
  }
  std::optional<Formula> preference_witness(const Model& m) const {
    return engine_->preference_witness(m);
  }
  bool witness_target(const Model& m, const Model& n) const {
    return engine_->witness_target(m, n);
  }
  bool smooth(const std::vector<Formula>& sample) const { return engine_->smooth(sample); }
  std::string serialize(const Model& m) const { return engine_->serialize(m); }
  std::string name() const {
    return engine_->mode() == CircMode::Pred ? "circ-pred" : "circ-dom";
  }

  SyntacticClass downward_class() const {
    return engine_->mode() == CircMode::Pred ? SyntacticClass::NegativeIn
                                             : SyntacticClass::Universal;
  }
  SyntacticClass upward_class() const {
    return engine_->mode() == CircMode::Pred ? SyntacticClass::PositiveIn
                                             : SyntacticClass::Existential;
  }
  std::string class_pred() const { return engine_->circ_pred(); }

 private:
  std::shared_ptr<const FinCirc> engine_;
};

using LogicHandle = std::variant<GroundS5Logic, MtelLogic, FinCircLogic>;

inline std::string logic_name(const LogicHandle& h) {
  return std::visit([](const auto& l) { return l.name(); }, h);
}

// Which language a handle's formulas are parsed in.
inline Lang logic_lang(const LogicHandle& h) {
  if (std::holds_alternative<GroundS5Logic>(h)) return Lang::S5;
  if (std::holds_alternative<MtelLogic>(h)) return Lang::TEL;
  return Lang::FO;
}

}  // namespace preflog
