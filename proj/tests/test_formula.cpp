#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "preflog/formula.hpp"
#include "preflog/syntactic.hpp"

using namespace preflog;

namespace {

Signature sig_pq() { return Signature::propositional({"p", "q"}); }
Signature sig_fo() {
  return Signature::first_order({{"P", 1}, {"Succ", 2}});
}

}  // namespace

TEST_CASE("parser builds the documented shapes") {
  Signature sig = sig_pq();
  CHECK(parse("K p & ~K q", sig, Lang::S5) ==
        land(know(atom("p")), lnot(know(atom("q")))));
  CHECK(parse("F(K p)", sig, Lang::TEL) == future(know(atom("p"))));
  CHECK(parse("F K p", sig, Lang::TEL) == future(know(atom("p"))));
  CHECK(parse("M(~p)", sig, Lang::S5) == maybe(lnot(atom("p"))));
  CHECK(parse("[] K p", sig, Lang::TEL) == always(know(atom("p"))));
  CHECK(parse("T", sig, Lang::S5) == top());
  CHECK(parse("_|_", sig, Lang::S5) == bot());
  // precedence: unary > & > | > -> (right assoc)
  CHECK(parse("K p & K q | K p -> K q -> K p", sig, Lang::S5) ==
        implies(lor(land(know(atom("p")), know(atom("q"))), know(atom("p"))),
                implies(know(atom("q")), know(atom("p")))));
}

TEST_CASE("parser rejects bad input with positions") {
  Signature sig = sig_pq();
  CHECK_THROWS_AS(parse("K r", sig, Lang::S5), ParseError);
  CHECK_THROWS_AS(parse("K p &", sig, Lang::S5), ParseError);
  CHECK_THROWS_AS(parse("F K p", sig, Lang::S5), ParseError);   // temporal in S5
  CHECK_THROWS_AS(parse("K (F p)", sig, Lang::TEL), ParseError);  // F under K
  CHECK_THROWS_AS(parse("M (F p)", sig, Lang::TEL), ParseError);  // F under M
  CHECK_THROWS_AS(parse("F(K p) & K(F p)", sig, Lang::TEL), ParseError);
  try {
    parse("K p & K r", sig, Lang::S5);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.pos == 8);
  }
}

TEST_CASE("first-order parsing") {
  Signature sig = sig_fo();
  Formula f = parse("forall x. forall y. P(x) & Succ(x,y) -> P(y)", sig, Lang::FO);
  CHECK(f.op() == Op::Forall);
  CHECK(parse("exists x. P(x)", sig, Lang::FO) == exists("x", pred("P", {"x"})));
  CHECK(parse("forall x. exists y. ~(x = y)", sig, Lang::FO) ==
        forall("x", exists("y", lnot(eq("x", "y")))));
  CHECK_THROWS_AS(parse("P(x,y)", sig, Lang::FO), ParseError);  // arity
  CHECK_THROWS_AS(parse("Q(x)", sig, Lang::FO), ParseError);    // unknown
  CHECK_THROWS_AS(parse("forall x. K p", sig, Lang::FO), ParseError);
  CHECK_THROWS_AS(parse("p & q", sig, Lang::FO), ParseError);   // no atoms in FO
}

namespace {

std::mt19937_64 rng(7);

Formula random_formula(const Signature& sig, Lang lang, int budget);

Formula random_leaf(const Signature& sig, Lang) {
  switch (rng() % 4) {
    case 0: return top();
    case 1: return bot();
    default:
      return atom(sig.atoms()[rng() % sig.atoms().size()]);
  }
}

Formula random_formula(const Signature& sig, Lang lang, int budget) {
  if (budget <= 1) return random_leaf(sig, lang);
  int n_ops = lang == Lang::TEL ? 11 : 6;
  switch (rng() % n_ops) {
    case 0: return lnot(random_formula(sig, lang, budget - 1));
    case 1:
      return land(random_formula(sig, lang, budget / 2),
                  random_formula(sig, lang, budget - 1 - budget / 2));
    case 2:
      return lor(random_formula(sig, lang, budget / 2),
                 random_formula(sig, lang, budget - 1 - budget / 2));
    case 3:
      return implies(random_formula(sig, lang, budget / 2),
                     random_formula(sig, lang, budget - 1 - budget / 2));
    case 4: return know(random_formula(sig, Lang::S5, budget - 1));
    case 5: return maybe(random_formula(sig, Lang::S5, budget - 1));
    case 6: return past(random_formula(sig, lang, budget - 1));
    case 7: return future(random_formula(sig, lang, budget - 1));
    case 8: return hist(random_formula(sig, lang, budget - 1));
    case 9: return glob(random_formula(sig, lang, budget - 1));
    default: return always(random_formula(sig, lang, budget - 1));
  }
}

}  // namespace

TEST_CASE("print/parse round trip on generated formulas up to size 12") {
  Signature sig = sig_pq();
  for (int i = 0; i < 400; ++i) {
    Lang lang = i % 2 ? Lang::S5 : Lang::TEL;
    Formula f = random_formula(sig, lang, 2 + static_cast<int>(rng() % 11));
    Formula g = parse(to_string(f), sig, lang);
    CHECK(g == f);
    CHECK(normalize(g, sig) == normalize(f, sig));
  }
}

TEST_CASE("normalizer expands the abbreviations literally") {
  Signature sig = sig_pq();
  Formula p = atom("p"), q = atom("q");
  CHECK(normalize(lor(p, q), sig) == lnot(land(lnot(p), lnot(q))));
  CHECK(normalize(maybe(p), sig) == lnot(know(lnot(p))));
  CHECK(normalize(glob(know(p)), sig) == lnot(future(lnot(know(p)))));
  CHECK(normalize(top(), sig) == lnot(land(lnot(p), lnot(lnot(p)))));
  // [] a == H a & a & G a
  Formula a = know(p);
  CHECK(normalize(always(a), sig) ==
        land(land(lnot(past(lnot(a))), a), lnot(future(lnot(a)))));
}

TEST_CASE("subjectivity (Def 3)") {
  Signature sig = sig_pq();
  CHECK(is_subjective(parse("~K p & K (q -> p)", sig, Lang::S5)));
  CHECK_FALSE(is_subjective(parse("K (p & q) | q", sig, Lang::S5)));
  CHECK(is_subjective(parse("K p", sig, Lang::S5)));
  CHECK(is_subjective(parse("M ~p", sig, Lang::S5)));  // M abbreviates ~K~
  CHECK(is_subjective(top()));
  CHECK(is_subjective(parse("F K p & G ~K q", sig, Lang::TEL)));
  CHECK_FALSE(is_subjective(parse("F p", sig, Lang::TEL)));
}

TEST_CASE("grammar classes are literal (Def 15, Prop 32)") {
  Signature sig = sig_pq();
  auto s5 = [&](const char* s) { return parse(s, sig, Lang::S5); };
  auto tel = [&](const char* s) { return parse(s, sig, Lang::TEL); };

  CHECK(classify(s5("M(~p)"), SyntacticClass::Diam));
  CHECK(classify(s5("M(M p)"), SyntacticClass::Diam));
  CHECK(classify(s5("M p & M q | M (p & q)"), SyntacticClass::Diam));
  CHECK_FALSE(classify(s5("K p"), SyntacticClass::Diam));
  CHECK_FALSE(classify(s5("~M p"), SyntacticClass::Diam));
  CHECK_FALSE(classify(s5("M p -> M q"), SyntacticClass::Diam));
  CHECK_FALSE(classify(s5("M (K p)"), SyntacticClass::Diam));  // inner must be prop or DIAM

  CHECK(classify(s5("K p"), SyntacticClass::Box));
  CHECK(classify(s5("K (K p & K q)"), SyntacticClass::Box));
  CHECK_FALSE(classify(s5("M p"), SyntacticClass::Box));

  CHECK(classify(tel("F (M ~p)"), SyntacticClass::Td));
  CHECK(classify(tel("G (M p & M q)"), SyntacticClass::Td));
  CHECK(classify(tel("M p"), SyntacticClass::Td));  // TD ::= DIAM
  CHECK_FALSE(classify(tel("F (K p)"), SyntacticClass::Td));
  CHECK_FALSE(classify(tel("[] M p"), SyntacticClass::Td));  // [] not in the grammar
  CHECK(classify(tel("F (K p)"), SyntacticClass::Tb));
  CHECK(classify(tel("H (K p) | P (K q)"), SyntacticClass::Tb));
  CHECK_FALSE(classify(tel("F (M p)"), SyntacticClass::Tb));

  CHECK_THROWS_AS(classify(tel("F (K p)"), SyntacticClass::Diam), std::invalid_argument);
}

TEST_CASE("polarity classes (Def 19, Prop 32.3)") {
  Signature sig = sig_fo();
  auto fo = [&](const char* s) { return parse(s, sig, Lang::FO); };

  // one P occurrence in an implication antecedent is negative
  Formula chain = fo("forall x. forall y. P(x) & Succ(x,y) -> P(y)");
  CHECK_FALSE(classify(chain, SyntacticClass::PositiveIn, "P"));
  CHECK_FALSE(classify(chain, SyntacticClass::NegativeIn, "P"));
  // Succ occurs only in the antecedent, hence negatively
  CHECK(classify(chain, SyntacticClass::NegativeIn, "Succ"));
  CHECK(classify(fo("forall x. ~P(x)"), SyntacticClass::NegativeIn, "P"));
  CHECK(classify(fo("exists x. P(x)"), SyntacticClass::PositiveIn, "P"));
  CHECK(classify(fo("forall x. P(x) -> _|_"), SyntacticClass::NegativeIn, "P"));
  // a formula not mentioning P is both positive and negative in P
  CHECK(classify(fo("exists x. Succ(x,x)"), SyntacticClass::PositiveIn, "P"));
  CHECK(classify(fo("exists x. Succ(x,x)"), SyntacticClass::NegativeIn, "P"));

  CHECK(classify(fo("forall x. forall y. Succ(x,y) -> ~(x = y)"),
                 SyntacticClass::Universal));
  CHECK_FALSE(classify(fo("forall x. exists y. Succ(x,y)"), SyntacticClass::Universal));
  CHECK(classify(fo("exists x. P(x)"), SyntacticClass::Existential));
  CHECK_FALSE(classify(fo("exists x. forall y. Succ(x,y)"), SyntacticClass::Existential));
}

TEST_CASE("odd negation heuristic (section 5)") {
  Signature sig = sig_pq();
  auto s5 = [&](const char* s) { return parse(s, sig, Lang::S5); };
  CHECK(odd_negation_heuristic(s5("~K(q | K p)")));
  CHECK_FALSE(odd_negation_heuristic(s5("K p")));
  CHECK(odd_negation_heuristic(s5("~K q & ~K p")));
  CHECK(odd_negation_heuristic(s5("M(~p)")));          // M = ~K~, K under one negation
  CHECK(odd_negation_heuristic(s5("M p | M (q & p)")));
  CHECK_FALSE(odd_negation_heuristic(s5("~M p")));     // K under two negations
  CHECK(odd_negation_heuristic(s5("K p -> K q")) == false);
}

TEST_CASE("temporal depth") {
  Signature sig = sig_pq();
  CHECK(temporal_depth(parse("K p", sig, Lang::TEL)) == 0);
  CHECK(temporal_depth(parse("F K p", sig, Lang::TEL)) == 1);
  CHECK(temporal_depth(parse("[](K p -> G K q)", sig, Lang::TEL)) == 2);
  CHECK(temporal_depth(parse("F G P K p", sig, Lang::TEL)) == 3);
}

TEST_CASE("well-formedness checks") {
  Signature sig = sig_pq();
  CHECK_THROWS_AS(check_well_formed(atom("r"), sig, Lang::S5), std::invalid_argument);
  CHECK_THROWS_AS(check_well_formed(know(future(atom("p"))), sig, Lang::TEL),
                  std::invalid_argument);
  CHECK_NOTHROW(check_well_formed(future(know(atom("p"))), sig, Lang::TEL));
  CHECK_THROWS_AS(check_well_formed(future(atom("p")), sig, Lang::S5),
                  std::invalid_argument);
}
