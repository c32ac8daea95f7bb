#pragma once

#include <cstdint>
#include <vector>

#include "preflog/defaults.hpp"
#include "preflog/formula.hpp"
#include "preflog/syntactic.hpp"

namespace preflog {

// Seeded, deterministic formula/theory generators shared by the property
// suites and the CLI selftest. Identical seeds give identical corpora.
struct CorpusOptions {
  uint64_t seed = 1;
  int count = 60;
  int max_size = 10;
};

// Subjective S5 formulas (K/M over propositional bodies, closed under the
// boolean connectives), deduplicated syntactically.
std::vector<Formula> subjective_s5_corpus(const Signature& sig, CorpusOptions opt);

// Subjective TEL formulas: the S5 shapes extended with P/F/G/H/[].
std::vector<Formula> subjective_tel_corpus(const Signature& sig, CorpusOptions opt);

// Closed first-order formulas over the signature.
std::vector<Formula> fo_sentence_corpus(const Signature& sig, CorpusOptions opt);

// Random members of a syntactic fragment (Diam/Box/Td/Tb), for the
// classifier-soundness sweeps.
std::vector<Formula> class_member_corpus(const Signature& sig, SyntacticClass cls,
                                         CorpusOptions opt);

// Propositional default theories with at most max_rules rules.
std::vector<DefaultTheory> default_theory_corpus(const Signature& sig, int count,
                                                 int max_rules, uint64_t seed);

}  // namespace preflog
