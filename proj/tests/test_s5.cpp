#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "preflog/s5.hpp"

using namespace preflog;

namespace {

GroundS5 engine_pq() { return GroundS5(Signature::propositional({"p", "q"})); }

Formula s5(const GroundS5& e, const char* s) { return parse(s, e.sig(), Lang::S5); }

}  // namespace

TEST_CASE("Def 4 satisfaction") {
  GroundS5 e = engine_pq();
  // worlds: p=msb, q=lsb -> "10" = 2, "11" = 3
  S5Model m = e.parse_model("10,11");
  CHECK(e.serialize(m) == "10,11");
  CHECK(e.sat(m, s5(e, "K p")));
  CHECK_FALSE(e.sat(m, s5(e, "K q")));
  CHECK(e.sat(m, s5(e, "M ~q")));
  CHECK(e.sat(m, 2, s5(e, "~q")));
  CHECK(e.sat(m, 3, s5(e, "q")));
  CHECK_THROWS_AS(e.sat(m, 0, s5(e, "p")), std::invalid_argument);  // world not in model
  CHECK_THROWS_AS(e.entails(s5(e, "K p | q"), s5(e, "K p")), std::invalid_argument);
}

TEST_CASE("Prop 5.1: subjective truth is world independent") {
  GroundS5 e = engine_pq();
  std::vector<Formula> fs = {s5(e, "K p"), s5(e, "M ~q & K (p | q)"),
                             s5(e, "~K p | K K q"), s5(e, "M M p")};
  for (const S5Model& m : e.models())
    for (const Formula& f : fs) {
      bool first = true, val = false;
      for (int w = 0; w < e.num_worlds(); ++w) {
        if (!((m.mask >> w) & 1u)) continue;
        bool v = e.sat(m, static_cast<WorldId>(w), f);
        if (first) {
          val = v;
          first = false;
        }
        CHECK(v == val);
      }
    }
}

TEST_CASE("degree-of-knowledge order (Def 6) is a partial order") {
  GroundS5 e = engine_pq();
  const auto& ms = e.models();
  CHECK(ms.size() == 15);
  for (const auto& a : ms) CHECK(dok_leq(a, a));
  for (const auto& a : ms)
    for (const auto& b : ms) {
      if (dok_leq(a, b) && dok_leq(b, a)) CHECK(a == b);
      for (const auto& c : ms)
        if (dok_leq(a, b) && dok_leq(b, c)) CHECK(dok_leq(a, c));
    }
  // Mod(P) is the bottom
  S5Model full{e.full_mask()};
  for (const auto& b : ms) CHECK(dok_leq(full, b));
  CHECK_FALSE(dok_leq(e.parse_model("10"), e.parse_model("10,11")));
}

TEST_CASE("monotone-K law behind Def 6") {
  GroundS5 e = engine_pq();
  std::vector<Formula> props = {s5(e, "p"), s5(e, "q"), s5(e, "p -> q"),
                                s5(e, "p & ~q"), s5(e, "p | q")};
  // m1 ≼ m2 means m1 ⊇ m2: fewer worlds carry at least as much knowledge
  for (const Formula& f : props) {
    Formula kf = know(f);
    for (const auto& m1 : e.models())
      for (const auto& m2 : e.models())
        if (dok_leq(m1, m2) && e.sat(m1, kf)) CHECK(e.sat(m2, kf));
  }
}

TEST_CASE("minimal models (Defs 1, 7)") {
  GroundS5 e = engine_pq();
  // Kp: unique minimal model = all p-valuations
  auto min_kp = e.minimal_models(s5(e, "K p"));
  REQUIRE(min_kp.size() == 1);
  CHECK(e.serialize(min_kp[0]) == "10,11");
  // Kp | Kq: the p-model and the q-model
  auto min_or = e.minimal_models(s5(e, "K p | K q"));
  REQUIRE(min_or.size() == 2);
  CHECK(e.serialize(min_or[0]) == "01,11");
  CHECK(e.serialize(min_or[1]) == "10,11");
  CHECK(e.minimal_models(s5(e, "_|_")).empty());
  CHECK(e.minimal_models(s5(e, "T")).size() == 1);
  CHECK(e.minimal_models(s5(e, "T"))[0].mask == e.full_mask());
}

TEST_CASE("paper entailment examples (sections 2.1 and 3)") {
  GroundS5 e = engine_pq();
  CHECK(e.entails(s5(e, "K p"), s5(e, "~K q")));
  CHECK_FALSE(e.entails(s5(e, "K p & K q"), s5(e, "~K q")));
  CHECK(e.entails(s5(e, "K p | K q"), s5(e, "~(K p & K q)")));
  CHECK(e.entails(s5(e, "(K p | K q) & M ~p"), s5(e, "K q")));
  CHECK_FALSE(e.entails(s5(e, "K p | K q"), s5(e, "K q")));
}

TEST_CASE("classical consequence and honesty") {
  GroundS5 e = engine_pq();
  CHECK(e.entails_classical(s5(e, "K p & K q"), s5(e, "K p")));
  // countermodel: the p&q world set satisfies Kp and Kq
  CHECK_FALSE(e.entails_classical(s5(e, "K p"), s5(e, "~K q")));
  CHECK(e.sat(e.parse_model("11"), s5(e, "K p")));
  CHECK_FALSE(e.sat(e.parse_model("11"), s5(e, "~K q")));
  CHECK(e.entails_classical(s5(e, "_|_"), s5(e, "K q")));
  // supraclassicality over minimal models
  CHECK(e.entails(s5(e, "K p & K q"), s5(e, "K p")));

  CHECK(e.honest(s5(e, "K p")));
  CHECK_FALSE(e.honest(s5(e, "K p | K q")));
  CHECK_FALSE(e.honest(s5(e, "_|_")));
}

TEST_CASE("expressibility witness (Prop 23, Def 21)") {
  GroundS5 e = engine_pq();
  // empty conjunction for the full model
  GroundS5 e1(Signature::propositional({"p"}));
  CHECK(e1.preference_witness(S5Model{e1.full_mask()}) == top());
  // P={p}: witness of {p:1} is K ~(~p), satisfied exactly by submodels
  S5Model just_p = e1.parse_model("1");
  Formula w = e1.preference_witness(just_p);
  CHECK(w == know(lnot(lnot(atom("p")))));
  for (const auto& n : e1.models())
    CHECK(e1.sat(n, w) == dok_leq(just_p, n));
  // brute force over all 15 models of P={p,q}
  for (const auto& m : e.models()) {
    Formula wm = e.preference_witness(m);
    for (const auto& n : e.models()) CHECK(e.sat(n, wm) == dok_leq(m, n));
  }
}

TEST_CASE("point formulas pin a single model") {
  GroundS5 e = engine_pq();
  for (const auto& m : e.models()) {
    Formula am = e.point_formula(m);
    for (const auto& n : e.models()) CHECK(e.sat(n, am) == (n == m));
  }
}

TEST_CASE("smoothness of the finite class (Def 26)") {
  GroundS5 e = engine_pq();
  CHECK(e.smooth({s5(e, "K p"), s5(e, "K p | K q"), s5(e, "M ~p & M ~q")}));
  CHECK(e.smooth({}));
  CHECK(e.smooth({s5(e, "_|_")}));
}

TEST_CASE("enumeration bound") {
  CHECK_THROWS_AS(GroundS5(Signature::propositional({"a", "b", "c"}), 2), BoundExceeded);
  CHECK_THROWS_AS(GroundS5(Signature::propositional({"a", "b", "c", "d", "e"})),
                  BoundExceeded);
  CHECK_NOTHROW(GroundS5(Signature::propositional({"a", "b", "c", "d"})));
}
