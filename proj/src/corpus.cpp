#include "preflog/corpus.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace preflog {

namespace {

using Rng = std::mt19937_64;

int pick(Rng& rng, int n) {
  return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng));
}

Formula random_prop(Rng& rng, const Signature& sig, int budget) {
  if (budget <= 1) {
    int c = pick(rng, 8);
    if (c == 0) return top();
    if (c == 1) return bot();
    return atom(sig.atoms()[static_cast<size_t>(pick(
        rng, static_cast<int>(sig.atoms().size())))]);
  }
  switch (pick(rng, 5)) {
    case 0: return lnot(random_prop(rng, sig, budget - 1));
    case 1: {
      int left = 1 + pick(rng, budget - 2 > 0 ? budget - 2 : 1);
      return land(random_prop(rng, sig, left), random_prop(rng, sig, budget - 1 - left));
    }
    case 2: {
      int left = 1 + pick(rng, budget - 2 > 0 ? budget - 2 : 1);
      return lor(random_prop(rng, sig, left), random_prop(rng, sig, budget - 1 - left));
    }
    case 3: {
      int left = 1 + pick(rng, budget - 2 > 0 ? budget - 2 : 1);
      return implies(random_prop(rng, sig, left),
                     random_prop(rng, sig, budget - 1 - left));
    }
    default: return random_prop(rng, sig, budget - 1);
  }
}

// Subjective shapes: K/M applied to arbitrary (possibly nested) S5 bodies,
// combined with the boolean connectives.
Formula random_s5_body(Rng& rng, const Signature& sig, int budget);

Formula random_subjective_s5(Rng& rng, const Signature& sig, int budget) {
  if (budget <= 2) {
    Formula base = random_prop(rng, sig, budget > 1 ? budget - 1 : 1);
    return pick(rng, 2) ? know(base) : maybe(base);
  }
  switch (pick(rng, 7)) {
    case 0: return know(random_s5_body(rng, sig, budget - 1));
    case 1: return maybe(random_s5_body(rng, sig, budget - 1));
    case 2: return lnot(random_subjective_s5(rng, sig, budget - 1));
    case 3: {
      int left = 1 + pick(rng, budget - 3 > 0 ? budget - 3 : 1);
      return land(random_subjective_s5(rng, sig, left),
                  random_subjective_s5(rng, sig, budget - 1 - left));
    }
    case 4: {
      int left = 1 + pick(rng, budget - 3 > 0 ? budget - 3 : 1);
      return lor(random_subjective_s5(rng, sig, left),
                 random_subjective_s5(rng, sig, budget - 1 - left));
    }
    case 5: {
      int left = 1 + pick(rng, budget - 3 > 0 ? budget - 3 : 1);
      return implies(random_subjective_s5(rng, sig, left),
                     random_subjective_s5(rng, sig, budget - 1 - left));
    }
    default: return know(random_s5_body(rng, sig, budget - 1));
  }
}

Formula random_s5_body(Rng& rng, const Signature& sig, int budget) {
  // mixes propositional material with nested modal operators
  if (budget <= 1 || pick(rng, 3) == 0) return random_prop(rng, sig, budget);
  if (pick(rng, 3) == 0) return random_subjective_s5(rng, sig, budget);
  switch (pick(rng, 3)) {
    case 0: return lnot(random_s5_body(rng, sig, budget - 1));
    case 1: {
      int left = 1 + pick(rng, budget - 2 > 0 ? budget - 2 : 1);
      return land(random_s5_body(rng, sig, left), random_s5_body(rng, sig, budget - 1 - left));
    }
    default: {
      int left = 1 + pick(rng, budget - 2 > 0 ? budget - 2 : 1);
      return lor(random_s5_body(rng, sig, left), random_s5_body(rng, sig, budget - 1 - left));
    }
  }
}

Formula random_subjective_tel(Rng& rng, const Signature& sig, int budget) {
  if (budget <= 3 || pick(rng, 3) == 0)
    return random_subjective_s5(rng, sig, budget);
  switch (pick(rng, 9)) {
    case 0: return past(random_subjective_tel(rng, sig, budget - 1));
    case 1: return future(random_subjective_tel(rng, sig, budget - 1));
    case 2: return hist(random_subjective_tel(rng, sig, budget - 1));
    case 3: return glob(random_subjective_tel(rng, sig, budget - 1));
    case 4: return always(random_subjective_tel(rng, sig, budget - 1));
    case 5: return lnot(random_subjective_tel(rng, sig, budget - 1));
    case 6: {
      int left = 1 + pick(rng, budget - 3 > 0 ? budget - 3 : 1);
      return land(random_subjective_tel(rng, sig, left),
                  random_subjective_tel(rng, sig, budget - 1 - left));
    }
    case 7: {
      int left = 1 + pick(rng, budget - 3 > 0 ? budget - 3 : 1);
      return lor(random_subjective_tel(rng, sig, left),
                 random_subjective_tel(rng, sig, budget - 1 - left));
    }
    default: return future(random_subjective_s5(rng, sig, budget - 1));
  }
}

template <typename Gen>
std::vector<Formula> collect(int count, Gen gen) {
  std::set<Formula> seen;
  std::vector<Formula> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count && attempts < count * 50) {
    ++attempts;
    Formula f = gen();
    if (seen.insert(f).second) out.push_back(f);
  }
  return out;
}

}  // namespace

std::vector<Formula> subjective_s5_corpus(const Signature& sig, CorpusOptions opt) {
  Rng rng(opt.seed);
  return collect(opt.count, [&] {
    int budget = 2 + pick(rng, opt.max_size - 1);
    return random_subjective_s5(rng, sig, budget);
  });
}

std::vector<Formula> subjective_tel_corpus(const Signature& sig, CorpusOptions opt) {
  Rng rng(opt.seed);
  return collect(opt.count, [&] {
    int budget = 2 + pick(rng, opt.max_size - 1);
    return random_subjective_tel(rng, sig, budget);
  });
}

namespace {

Formula random_fo(Rng& rng, const Signature& sig,
                  const std::vector<std::string>& scope, int budget) {
  if (budget <= 2 || (pick(rng, 3) == 0 && !scope.empty())) {
    // leaf: predicate application or equality over in-scope variables
    if (scope.empty()) return pick(rng, 2) ? top() : bot();
    int c = pick(rng, static_cast<int>(sig.preds().size()) + 1);
    if (c == static_cast<int>(sig.preds().size())) {
      const std::string& a = scope[static_cast<size_t>(pick(rng, static_cast<int>(scope.size())))];
      const std::string& b = scope[static_cast<size_t>(pick(rng, static_cast<int>(scope.size())))];
      return eq(a, b);
    }
    const PredDecl& d = sig.preds()[static_cast<size_t>(c)];
    std::vector<std::string> args;
    for (int i = 0; i < d.arity; ++i)
      args.push_back(scope[static_cast<size_t>(pick(rng, static_cast<int>(scope.size())))]);
    return pred(d.name, std::move(args));
  }
  switch (pick(rng, 6)) {
    case 0: {
      std::vector<std::string> inner = scope;
      std::string v = "v" + std::to_string(scope.size() + 1);
      inner.push_back(v);
      return forall(v, random_fo(rng, sig, inner, budget - 1));
    }
    case 1: {
      std::vector<std::string> inner = scope;
      std::string v = "v" + std::to_string(scope.size() + 1);
      inner.push_back(v);
      return exists(v, random_fo(rng, sig, inner, budget - 1));
    }
    case 2: return lnot(random_fo(rng, sig, scope, budget - 1));
    case 3: {
      int left = 1 + pick(rng, budget - 2 > 0 ? budget - 2 : 1);
      return land(random_fo(rng, sig, scope, left),
                  random_fo(rng, sig, scope, budget - 1 - left));
    }
    case 4: {
      int left = 1 + pick(rng, budget - 2 > 0 ? budget - 2 : 1);
      return lor(random_fo(rng, sig, scope, left),
                 random_fo(rng, sig, scope, budget - 1 - left));
    }
    default: {
      int left = 1 + pick(rng, budget - 2 > 0 ? budget - 2 : 1);
      return implies(random_fo(rng, sig, scope, left),
                     random_fo(rng, sig, scope, budget - 1 - left));
    }
  }
}

}  // namespace

std::vector<Formula> fo_sentence_corpus(const Signature& sig, CorpusOptions opt) {
  Rng rng(opt.seed);
  return collect(opt.count, [&] {
    int budget = 3 + pick(rng, opt.max_size - 2);
    // ensure at least one leading quantifier so leaves have variables
    std::string v = "v1";
    Formula body = random_fo(rng, sig, {v}, budget - 1);
    return pick(rng, 2) ? forall(v, body) : exists(v, body);
  });
}

namespace {

Formula random_modal_member(Rng& rng, const Signature& sig, Op modal, int budget) {
  if (budget <= 3) return Formula::make(modal, {random_prop(rng, sig, budget - 1)});
  switch (pick(rng, 4)) {
    case 0: {
      int left = 2 + pick(rng, budget - 4 > 0 ? budget - 4 : 1);
      return land(random_modal_member(rng, sig, modal, left),
                  random_modal_member(rng, sig, modal, budget - 1 - left));
    }
    case 1: {
      int left = 2 + pick(rng, budget - 4 > 0 ? budget - 4 : 1);
      return lor(random_modal_member(rng, sig, modal, left),
                 random_modal_member(rng, sig, modal, budget - 1 - left));
    }
    case 2: return Formula::make(modal, {random_modal_member(rng, sig, modal, budget - 1)});
    default: return Formula::make(modal, {random_prop(rng, sig, budget - 1)});
  }
}

Formula random_temporal_member(Rng& rng, const Signature& sig, Op modal, int budget) {
  if (budget <= 3 || pick(rng, 3) == 0)
    return random_modal_member(rng, sig, modal, budget);
  switch (pick(rng, 6)) {
    case 0: return past(random_temporal_member(rng, sig, modal, budget - 1));
    case 1: return future(random_temporal_member(rng, sig, modal, budget - 1));
    case 2: return hist(random_temporal_member(rng, sig, modal, budget - 1));
    case 3: return glob(random_temporal_member(rng, sig, modal, budget - 1));
    case 4: {
      int left = 2 + pick(rng, budget - 4 > 0 ? budget - 4 : 1);
      return land(random_temporal_member(rng, sig, modal, left),
                  random_temporal_member(rng, sig, modal, budget - 1 - left));
    }
    default: {
      int left = 2 + pick(rng, budget - 4 > 0 ? budget - 4 : 1);
      return lor(random_temporal_member(rng, sig, modal, left),
                 random_temporal_member(rng, sig, modal, budget - 1 - left));
    }
  }
}

}  // namespace

std::vector<Formula> class_member_corpus(const Signature& sig, SyntacticClass cls,
                                         CorpusOptions opt) {
  Rng rng(opt.seed);
  Op modal = (cls == SyntacticClass::Diam || cls == SyntacticClass::Td) ? Op::Maybe
                                                                        : Op::Know;
  bool temporal = cls == SyntacticClass::Td || cls == SyntacticClass::Tb;
  if (cls != SyntacticClass::Diam && cls != SyntacticClass::Box && !temporal)
    throw std::invalid_argument("class_member_corpus supports Diam/Box/Td/Tb");
  return collect(opt.count, [&] {
    int budget = 2 + pick(rng, opt.max_size - 1);
    return temporal ? random_temporal_member(rng, sig, modal, budget)
                    : random_modal_member(rng, sig, modal, budget);
  });
}

std::vector<DefaultTheory> default_theory_corpus(const Signature& sig, int count,
                                                 int max_rules, uint64_t seed) {
  Rng rng(seed);
  std::vector<DefaultTheory> out;
  for (int i = 0; i < count; ++i) {
    DefaultTheory t;
    int facts = pick(rng, 2);
    for (int j = 0; j < facts; ++j) t.facts.push_back(random_prop(rng, sig, 3));
    int rules = 1 + pick(rng, max_rules);
    for (int j = 0; j < rules; ++j) {
      DefaultRule r;
      r.pre = pick(rng, 3) == 0 ? top() : random_prop(rng, sig, 3);
      r.just = random_prop(rng, sig, 3);
      r.cons = random_prop(rng, sig, 3);
      t.rules.push_back(std::move(r));
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace preflog
