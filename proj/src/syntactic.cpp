#include "preflog/syntactic.hpp"

#include <algorithm>
#include <stdexcept>

namespace preflog {

namespace {

bool contains_op(const Formula& f, bool (*p)(Op)) {
  if (p(f.op())) return true;
  for (size_t i = 0; i < f.arity(); ++i)
    if (contains_op(f.child(i), p)) return true;
  return false;
}

bool temporal_op(Op op) {
  return op == Op::Past || op == Op::Future || op == Op::Hist ||
         op == Op::Glob || op == Op::Always;
}
bool modal_op(Op op) { return op == Op::Know || op == Op::Maybe; }
bool fo_op(Op op) {
  return op == Op::Forall || op == Op::Exists || op == Op::Pred || op == Op::Eq;
}
bool quantifier_op(Op op) { return op == Op::Forall || op == Op::Exists; }

// DIAM ::= M(phi) | DIAM & DIAM | DIAM "|" DIAM | M(DIAM), phi propositional.
// BOX is the K-dual (Prop 32.1).
bool in_modal_grammar(const Formula& f, Op modal) {
  switch (f.op()) {
    case Op::And:
    case Op::Or:
      return in_modal_grammar(f.child(0), modal) &&
             in_modal_grammar(f.child(1), modal);
    default:
      if (f.op() != modal) return false;
      return is_propositional(f.child(0)) || in_modal_grammar(f.child(0), modal);
  }
}

// TD ::= DIAM | TD & TD | TD "|" TD | F(TD) | G(TD) | P(TD) | H(TD);
// TB analogously over BOX (Def 17, Prop 32.2).
bool in_temporal_grammar(const Formula& f, Op modal) {
  switch (f.op()) {
    case Op::And:
    case Op::Or:
      return in_temporal_grammar(f.child(0), modal) &&
             in_temporal_grammar(f.child(1), modal);
    case Op::Past:
    case Op::Future:
    case Op::Hist:
    case Op::Glob:
      return in_temporal_grammar(f.child(0), modal);
    default:
      return in_modal_grammar(f, modal);
  }
}

// Collects negation parities of every occurrence of `p`. An implication
// antecedent counts as one negation (Def 19 on the ~/| expansion).
void polarity_walk(const Formula& f, const std::string& p, int parity,
                   bool& all_odd, bool& all_even) {
  switch (f.op()) {
    case Op::Pred:
      if (f.name() == p) {
        if (parity % 2 == 0) all_odd = false;
        else all_even = false;
      }
      return;
    case Op::Not:
      polarity_walk(f.child(0), p, parity + 1, all_odd, all_even);
      return;
    case Op::Implies:
      polarity_walk(f.child(0), p, parity + 1, all_odd, all_even);
      polarity_walk(f.child(1), p, parity, all_odd, all_even);
      return;
    default:
      for (size_t i = 0; i < f.arity(); ++i)
        polarity_walk(f.child(i), p, parity, all_odd, all_even);
      return;
  }
}

bool quantifier_free(const Formula& f) { return !contains_op(f, quantifier_op); }

}  // namespace

bool is_propositional(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Top:
    case Op::Bot:
      return true;
    case Op::Not:
    case Op::And:
    case Op::Or:
    case Op::Implies:
      for (size_t i = 0; i < f.arity(); ++i)
        if (!is_propositional(f.child(i))) return false;
      return true;
    default:
      return false;
  }
}

namespace {

bool prenex_shape(const Formula& f, Op q) {
  const Formula* cur = &f;
  while (cur->op() == q) cur = &cur->child(0);
  return quantifier_free(*cur);
}

void require_s5(const Formula& f) {
  if (contains_op(f, temporal_op) || contains_op(f, fo_op))
    throw std::invalid_argument("class/language mismatch: expected an S5 formula");
}
void require_tel(const Formula& f) {
  if (contains_op(f, fo_op))
    throw std::invalid_argument("class/language mismatch: expected a TEL formula");
}
void require_fo(const Formula& f) {
  if (contains_op(f, modal_op) || contains_op(f, temporal_op) ||
      contains_op(f, [](Op op) { return op == Op::Atom; }))
    throw std::invalid_argument("class/language mismatch: expected a first-order formula");
}

}  // namespace

bool classify(const Formula& f, SyntacticClass cls, const std::string& p) {
  switch (cls) {
    case SyntacticClass::Diam:
      require_s5(f);
      return in_modal_grammar(f, Op::Maybe);
    case SyntacticClass::Box:
      require_s5(f);
      return in_modal_grammar(f, Op::Know);
    case SyntacticClass::Td:
      require_tel(f);
      return in_temporal_grammar(f, Op::Maybe);
    case SyntacticClass::Tb:
      require_tel(f);
      return in_temporal_grammar(f, Op::Know);
    case SyntacticClass::NegativeIn:
    case SyntacticClass::PositiveIn: {
      require_fo(f);
      if (p.empty()) throw std::invalid_argument("NegativeIn/PositiveIn need a predicate");
      bool all_odd = true, all_even = true;
      polarity_walk(f, p, 0, all_odd, all_even);
      return cls == SyntacticClass::NegativeIn ? all_odd : all_even;
    }
    case SyntacticClass::Universal:
      require_fo(f);
      return prenex_shape(f, Op::Forall);
    case SyntacticClass::Existential:
      require_fo(f);
      return prenex_shape(f, Op::Exists);
    case SyntacticClass::Subjective:
      require_s5(f);
      return is_subjective(f);
    case SyntacticClass::SubjectiveTel:
      require_tel(f);
      return is_subjective(f);
  }
  throw std::logic_error("classify: unhandled class");
}

namespace {

bool subjective_rec(const Formula& f, bool under_k) {
  if (f.op() == Op::Atom) return under_k;
  bool k = under_k || modal_op(f.op());
  for (size_t i = 0; i < f.arity(); ++i)
    if (!subjective_rec(f.child(i), k)) return false;
  return true;
}

}  // namespace

bool is_subjective(const Formula& f) { return subjective_rec(f, false); }

int temporal_depth(const Formula& f) {
  int inner = 0;
  for (size_t i = 0; i < f.arity(); ++i)
    inner = std::max(inner, temporal_depth(f.child(i)));
  return inner + (temporal_op(f.op()) ? 1 : 0);
}

namespace {

// parity = number of negations from the root (Implies antecedents and the
// outer negation of M = ~K~ included); k_parity = parity at the nearest
// enclosing K, or -1 above any K.
bool odd_neg_rec(const Formula& f, int parity, int k_parity) {
  switch (f.op()) {
    case Op::Atom:
      return k_parity >= 0 && k_parity % 2 == 1;
    case Op::Top:
    case Op::Bot:
      return true;
    case Op::Not:
      return odd_neg_rec(f.child(0), parity + 1, k_parity);
    case Op::Implies:
      return odd_neg_rec(f.child(0), parity + 1, k_parity) &&
             odd_neg_rec(f.child(1), parity, k_parity);
    case Op::Know:
      return odd_neg_rec(f.child(0), parity, parity);
    case Op::Maybe:
      // M phi == ~K~phi: the K sits under one extra negation, phi under two.
      return odd_neg_rec(f.child(0), parity, parity + 1);
    default:
      for (size_t i = 0; i < f.arity(); ++i)
        if (!odd_neg_rec(f.child(i), parity, k_parity)) return false;
      return true;
  }
}

}  // namespace

bool odd_negation_heuristic(const Formula& f) { return odd_neg_rec(f, 0, -1); }

const char* to_string(SyntacticClass cls) {
  switch (cls) {
    case SyntacticClass::Diam: return "diam";
    case SyntacticClass::Box: return "box";
    case SyntacticClass::Td: return "td";
    case SyntacticClass::Tb: return "tb";
    case SyntacticClass::NegativeIn: return "negative";
    case SyntacticClass::PositiveIn: return "positive";
    case SyntacticClass::Universal: return "universal";
    case SyntacticClass::Existential: return "existential";
    case SyntacticClass::Subjective: return "subjective";
    case SyntacticClass::SubjectiveTel: return "subjective-tel";
  }
  return "?";
}

SyntacticClass syntactic_class_from_string(const std::string& s) {
  if (s == "diam") return SyntacticClass::Diam;
  if (s == "box") return SyntacticClass::Box;
  if (s == "td") return SyntacticClass::Td;
  if (s == "tb") return SyntacticClass::Tb;
  if (s == "negative") return SyntacticClass::NegativeIn;
  if (s == "positive") return SyntacticClass::PositiveIn;
  if (s == "universal") return SyntacticClass::Universal;
  if (s == "existential") return SyntacticClass::Existential;
  if (s == "subjective") return SyntacticClass::Subjective;
  if (s == "subjective-tel") return SyntacticClass::SubjectiveTel;
  throw std::invalid_argument("unknown syntactic class: " + s);
}

}  // namespace preflog
