#pragma once

#include <string>

#include "preflog/formula.hpp"

namespace preflog {

// The paper-backed syntactic fragments. Diam/Box are grammars over the
// literal M/K nodes; Td/Tb extend them with F/G/P/H; NegativeIn/PositiveIn
// count negation parity around a predicate; Universal/Existential are the
// prenex quantifier-free shapes. Membership is exact grammar membership,
// no equivalence reasoning.
enum class SyntacticClass {
  Diam,
  Box,
  Td,
  Tb,
  NegativeIn,
  PositiveIn,
  Universal,
  Existential,
  Subjective,
  SubjectiveTel,
};

// `pred` is required for NegativeIn/PositiveIn and ignored otherwise.
// Throws std::invalid_argument on a class/language mismatch (e.g. a
// temporal formula probed against Diam).
bool classify(const Formula& f, SyntacticClass cls, const std::string& pred = {});

// True iff every atom occurrence lies under a K (or M, which abbreviates
// ~K~) operator. Top/Bot contain no atoms and are subjective.
bool is_subjective(const Formula& f);

// Atoms, constants and ~ & | -> only.
bool is_propositional(const Formula& f);

// Maximum nesting of temporal operators; [] counts one level.
int temporal_depth(const Formula& f);

// The polynomial downward-persistence check: true iff the nearest
// enclosing K of every atom sits under an odd number of negations,
// counting an implication antecedent as one negation and M as a negated
// K. Sound for Ground S5 (implies downward persistence), not complete.
bool odd_negation_heuristic(const Formula& f);

const char* to_string(SyntacticClass cls);
// Parses the CLI spelling (diam, box, td, tb, negative, positive,
// universal, existential, subjective, subjective-tel).
SyntacticClass syntactic_class_from_string(const std::string& s);

}  // namespace preflog
