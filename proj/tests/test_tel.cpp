#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "preflog/corpus.hpp"
#include "preflog/s5.hpp"
#include "preflog/tel.hpp"

using namespace preflog;

namespace {

Mtel engine_p() { return Mtel(Signature::propositional({"p"})); }
Mtel engine_pq() { return Mtel(Signature::propositional({"p", "q"})); }

Formula tel(const Mtel& e, const char* s) { return parse(s, e.sig(), Lang::TEL); }

TelcModel full_then(const Mtel& e, const char* state, int at) {
  return TelcModel({S5Model{e.s5().full_mask()}, e.s5().parse_model(state)}, {at});
}

}  // namespace

TEST_CASE("TelcModel invariants") {
  Mtel e = engine_p();
  uint32_t full = e.s5().full_mask();
  CHECK_NOTHROW(TelcModel({S5Model{full}}, {}));
  CHECK_NOTHROW(TelcModel({S5Model{full}, S5Model{2}}, {1}));
  // must strictly shrink
  CHECK_THROWS_AS(TelcModel({S5Model{full}, S5Model{full}}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(TelcModel({S5Model{2}, S5Model{full}}, {1}), std::invalid_argument);
  // change points strictly increasing from 1
  CHECK_THROWS_AS(TelcModel({S5Model{full}, S5Model{2}}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(TelcModel({S5Model{full}, S5Model{3}, S5Model{2}}, {2, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(TelcModel({S5Model{full}, S5Model{0}}, {1}), std::invalid_argument);
}

TEST_CASE("Def 9 satisfaction") {
  Mtel e = engine_p();
  TelcModel constant_full = e.totally_ignorant();
  CHECK_FALSE(e.sat(constant_full, tel(e, "F K p")));
  TelcModel m = full_then(e, "1", 1);
  CHECK(e.sat(m, 0, tel(e, "F K p")));
  CHECK_FALSE(e.sat(m, 0, tel(e, "K p")));
  CHECK(e.sat(m, 1, tel(e, "K p")));
  CHECK(e.sat(m, 5, tel(e, "K p")));           // constant tail
  CHECK(e.sat(m, 1, tel(e, "P ~K p")));
  CHECK_FALSE(e.sat(m, 0, tel(e, "P T")));     // no strict past at 0
  CHECK(e.sat(m, 0, tel(e, "G K p")));         // strict future
  CHECK_FALSE(e.sat(m, 0, tel(e, "[] K p")));  // fails at 0
  CHECK_FALSE(e.sat(m, 1, tel(e, "[] K p")));  // [] quantifies over all times
  CHECK(e.sat(m, 0, tel(e, "H _|_")));
  CHECK_FALSE(e.sat(m, 1, tel(e, "H _|_")));
}

TEST_CASE("at_time formulas pick out single instants") {
  Mtel e = engine_p();
  TelcModel m = full_then(e, "1", 2);
  for (int i = 0; i <= 4; ++i)
    for (int t = 0; t <= 4; ++t)
      CHECK(e.sat(m, t, e.at_time(i)) == (t == i));
}

TEST_CASE("pointwise order (Def 10.1)") {
  Mtel e = engine_p();
  TelcModel ti = e.totally_ignorant();
  TelcModel at1 = full_then(e, "1", 1);
  TelcModel at2 = full_then(e, "1", 2);
  for (const TelcModel& m : {ti, at1, at2}) {
    CHECK(telc_leq(ti, m));  // no model is preferred over M^ti
    CHECK(telc_leq(m, m));
  }
  // a later change is more ignorant
  CHECK(telc_leq(at2, at1));
  CHECK_FALSE(telc_leq(at1, at2));
}

TEST_CASE("order properties over the enumerated class") {
  Mtel e = engine_pq();
  auto ms = e.models(2);
  for (const auto& a : ms) CHECK(telc_leq(a, a));
  for (const auto& a : ms)
    for (const auto& b : ms) {
      if (telc_leq(a, b) && telc_leq(b, a)) CHECK(a == b);
      for (const auto& c : ms)
        if (telc_leq(a, b) && telc_leq(b, c)) CHECK(telc_leq(a, c));
    }
}

TEST_CASE("conservativity: propositional knowledge persists") {
  Mtel e = engine_pq();
  std::vector<Formula> props = {parse("p", e.sig(), Lang::S5),
                                parse("p | q", e.sig(), Lang::S5),
                                parse("p & ~q", e.sig(), Lang::S5)};
  for (const auto& m : e.models(3))
    for (const Formula& f : props) {
      Formula kf = know(f);
      for (int t = 0; t < 5; ++t)
        if (e.sat(m, t, kf))
          for (int s = t + 1; s < 7; ++s) CHECK(e.sat(m, s, kf));
    }
}

TEST_CASE("Def 9 translation identities") {
  Mtel e = engine_pq();
  CorpusOptions opt;
  opt.count = 12;
  opt.max_size = 6;
  std::vector<Formula> fs = subjective_tel_corpus(e.sig(), opt);
  Formula no_past = lnot(past(top()));
  for (const auto& m : e.models(2)) {
    for (const Formula& f : fs) {
      // (M,0) |= f  iff  forall t: (M,t) |= ~P T -> f
      bool at0 = e.sat(m, 0, f);
      bool all_t = true;
      for (int t = 0; t <= 6; ++t) all_t = all_t && e.sat(m, t, implies(no_past, f));
      CHECK(at0 == all_t);
      // forall t: (M,t) |= f  iff  (M,0) |= f & G f
      bool every = true;
      for (int t = 0; t <= 6; ++t) every = every && e.sat(m, t, f);
      CHECK(every == e.sat(m, 0, land(f, glob(f))));
    }
  }
}

TEST_CASE("F(Kp) has no certified minimal model (section 4)") {
  Mtel e = engine_p();
  Horizon hz{3, 2};
  auto mm = e.minimal_models(tel(e, "F K p"), hz);
  CHECK(mm.certified.empty());
  REQUIRE(mm.uncertified.size() == 1);
  CHECK(mm.divergent[0]);
  // the lone survivor delays knowledge to the horizon
  CHECK(e.serialize(mm.uncertified[0]) == "0,1@[0,3) ; 1@[3,inf)");
}

TEST_CASE("F(Kp) & Kp has the constant-p certified minimal model (section 4)") {
  Mtel e = engine_p();
  Horizon hz{3, 2};
  auto mm = e.minimal_models(tel(e, "F K p & K p"), hz);
  REQUIRE(mm.certified.size() == 1);
  CHECK(mm.uncertified.empty());
  CHECK(e.serialize(mm.certified[0]) == "1@[0,inf)");
}

TEST_CASE("T has the totally ignorant model as its certified minimum") {
  Mtel e = engine_pq();
  Horizon hz{2, 2};
  auto mm = e.minimal_models(tel(e, "T"), hz);
  REQUIRE(mm.certified.size() == 1);
  CHECK(mm.uncertified.empty());
  CHECK(e.is_totally_ignorant(mm.certified[0]));
  CHECK(mm.certified[0] == e.totally_ignorant());
}

TEST_CASE("paper MTEL entailments (section 4)") {
  Mtel e = engine_pq();
  CHECK(e.entails(tel(e, "F K p"), tel(e, "F K q")) == Verdict::True);
  CHECK(e.entails(tel(e, "F K p & K p"), tel(e, "F K q")) == Verdict::False);
  CHECK(e.entails(tel(e, "F K p & K p"), tel(e, "F K p")) == Verdict::True);
}

TEST_CASE("GS5 agreement on subjective S5 formulas (section 2.2)") {
  Mtel e = engine_pq();
  GroundS5 s5(e.sig());
  CorpusOptions opt;
  opt.count = 25;
  opt.max_size = 7;
  std::vector<Formula> fs = subjective_s5_corpus(e.sig(), opt);
  int checked = 0;
  for (size_t i = 0; i < fs.size(); i += 3)
    for (size_t j = 1; j < fs.size(); j += 4) {
      Verdict v = e.entails(fs[i], fs[j]);
      CHECK(v != Verdict::Unknown);
      CHECK((v == Verdict::True) == s5.entails(fs[i], fs[j]));
      ++checked;
    }
  CHECK(checked >= 40);
}

TEST_CASE("totally ignorant recognizer (Def 33)") {
  Mtel e = engine_p();
  CHECK(e.is_totally_ignorant(e.totally_ignorant()));
  CHECK_FALSE(e.is_totally_ignorant(full_then(e, "1", 1)));
  // over a finite signature it is the only one among enumerated models
  Mtel epq = engine_pq();
  for (const auto& m : epq.models(2))
    CHECK(epq.is_totally_ignorant(m) == (m == epq.totally_ignorant()));
}

TEST_CASE("sim_equiv (Def 17.2, bounded)") {
  Mtel e = engine_pq();
  Horizon hz{3, 2};
  Formula f = tel(e, "F K p");
  CHECK(e.sim_equiv(f, f, hz));
  CHECK_FALSE(e.sim_equiv(tel(e, "K p"), tel(e, "K q"), hz));
  // conservativity makes knowledge persist: [] K p ~ K p over TELC models
  CHECK(e.sim_equiv(tel(e, "[] K p"), tel(e, "K p"), hz));
  CHECK(e.sim_equiv(tel(e, "F G K p"), tel(e, "F K p"), hz));
  CHECK_FALSE(e.sim_equiv(tel(e, "G K p | K p"), tel(e, "F K p"), hz));
}

TEST_CASE("expressibility witnesses over the enumerated class (Prop 23)") {
  Mtel e = engine_p();
  auto ms = e.models(3);
  for (const auto& m : ms) {
    Formula w = e.preference_witness(m);
    for (const auto& n : ms) CHECK(e.sat(n, w) == telc_leq(m, n));
  }
}

TEST_CASE("point formulas pin models within the class") {
  Mtel e = engine_p();
  auto ms = e.models(2);
  for (const auto& m : ms) {
    Formula pf = e.point_formula(m, 2);
    for (const auto& n : ms) CHECK(e.sat(n, pf) == (n == m));
  }
}

TEST_CASE("flat-lattice restriction agrees with brute in-class minimality") {
  Mtel e = engine_pq();
  Horizon hz{3, 0};  // no postponement: survivors are exactly class-minimal
  std::vector<Formula> flats = {tel(e, "F K p"), tel(e, "F K p & K p"),
                                tel(e, "K p | K q"), tel(e, "G(M ~p) & F K q"),
                                tel(e, "[] (K p -> G K q)")};
  for (const Formula& f : flats) {
    auto restricted = e.minimal_models(f, hz);
    std::vector<TelcModel> sat_set;
    for (const auto& m : e.models(hz.h))
      if (e.sat(m, f)) sat_set.push_back(m);
    std::vector<TelcModel> brute;
    for (const auto& m : sat_set) {
      bool minimal = true;
      for (const auto& n : sat_set)
        if (!(n == m) && telc_leq(n, m)) minimal = false;
      if (minimal) brute.push_back(m);
    }
    std::sort(brute.begin(), brute.end());
    std::vector<TelcModel> combined = restricted.certified;
    combined.insert(combined.end(), restricted.uncertified.begin(),
                    restricted.uncertified.end());
    std::sort(combined.begin(), combined.end());
    CHECK(combined == brute);
  }
}

TEST_CASE("flat restriction handles three atoms") {
  Mtel e(Signature::propositional({"p", "q", "r"}));
  Horizon hz{3, 2};
  Formula f = parse("F K p & K q", e.sig(), Lang::TEL);
  auto mm = e.minimal_models(f, hz);
  CHECK(mm.certified.size() + mm.uncertified.size() >= 1);
  // nested modality over three atoms exceeds the bound
  CHECK_THROWS_AS(e.minimal_models(parse("K (p | K q)", e.sig(), Lang::TEL), hz),
                  BoundExceeded);
}

TEST_CASE("non-subjective and ill-formed inputs rejected") {
  Mtel e = engine_p();
  CHECK_THROWS_AS(e.entails(parse("p", e.sig(), Lang::TEL), tel(e, "K p"), Horizon{2, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(e.sat(e.totally_ignorant(), parse("F p", e.sig(), Lang::TEL)),
                  std::invalid_argument);
}
