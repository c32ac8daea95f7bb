#pragma once

#include <string>
#include <vector>

#include "preflog/formula.hpp"
#include "preflog/tel.hpp"

namespace preflog {

// A propositional default rule (pre : just) / cons.
struct DefaultRule {
  Formula pre, just, cons;
};

// A finite propositional default theory <W, D>.
struct DefaultTheory {
  std::vector<Formula> facts;  // W
  std::vector<DefaultRule> rules;  // D
};

// Prop 11 embedding:
//   AND{ [](K pre & G ~K~just -> G(K cons)) | rules } & AND{ K w | facts }
// Degenerate components drop out; the empty theory maps to T.
Formula default_to_mtel(const DefaultTheory& theory);

// phi is a sceptical consequence of the theory iff the translation
// MTEL-entails F(K phi) (Prop 11).
Verdict sceptical_consequence(const Mtel& mtel, const DefaultTheory& theory,
                              const Formula& phi, Horizon hz);
Verdict sceptical_consequence(const Mtel& mtel, const DefaultTheory& theory,
                              const Formula& phi);

// Independent cross-validation oracle: all Reiter extensions, each returned
// as the set of satisfying valuations (a world mask over the signature),
// computed by the classic fixed point over candidate generating-default
// sets. Sorted ascending; at most 4 atoms.
std::vector<uint32_t> reiter_extensions(const GroundS5& s5, const DefaultTheory& theory);

// phi belongs to every Reiter extension (vacuously true without extensions).
bool reiter_sceptical(const GroundS5& s5, const DefaultTheory& theory,
                      const Formula& phi);

// Text format: one `fact: <formula>` or `default: <pre> : <just> / <cons>`
// per line; blank lines and `#` comments ignored.
DefaultTheory parse_default_theory(const std::string& text, const Signature& sig);

}  // namespace preflog
