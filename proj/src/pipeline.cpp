#include "preflog/pipeline.hpp"

#include <chrono>
#include <sstream>

#include <json.hpp>

namespace preflog {

const char* to_string(Route r) {
  switch (r) {
    case Route::ConservativeReduction: return "conservative-reduction";
    case Route::DownwardPersistentAdd: return "downward-persistent-add";
    case Route::UpwardPersistentKeep: return "upward-persistent-keep";
    case Route::LocalSplit: return "local-split";
    case Route::Direct: return "direct";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

struct StageTimer {
  QueryReport& report;
  const char* stage;
  Clock::time_point start = Clock::now();
  StageTimer(QueryReport& r, const char* s) : report(r), stage(s) {}
  ~StageTimer() {
    report.stage_ms.emplace_back(
        stage, std::chrono::duration<double, std::milli>(Clock::now() - start).count());
  }
};

// Sampled Def 21 / Def 26 side-condition checks. Exhaustive on small model
// classes, strided samples on large ones.
template <typename L>
bool expressibility_ok(const L& logic) {
  const auto& ms = logic.models();
  size_t outer_stride = ms.size() <= 30 ? 1 : ms.size() / 24;
  size_t inner_stride = ms.size() <= 200 ? 1 : ms.size() / 120;
  for (size_t i = 0; i < ms.size(); i += outer_stride) {
    std::optional<Formula> w = logic.preference_witness(ms[i]);
    if (!w) return false;
    for (size_t j = 0; j < ms.size(); j += inner_stride)
      if (logic.sat(ms[j], *w) != logic.witness_target(ms[i], ms[j])) return false;
  }
  return true;
}

bool smooth_ok(const GroundS5Logic& l, const std::vector<Formula>& fs) {
  return l.smooth(fs);
}
bool smooth_ok(const FinCircLogic& l, const std::vector<Formula>& fs) {
  return l.engine().smooth(fs);
}

Verdict bool_verdict(bool b) { return b ? Verdict::True : Verdict::False; }

// classical countermodel for the report
template <typename L>
std::optional<std::string> classical_countermodel(const L& logic, const Formula& a,
                                                  const Formula& b) {
  for (const auto& m : logic.models())
    if (logic.sat(m, a) && !logic.sat(m, b)) return logic.serialize(m);
  return std::nullopt;
}

struct RouteDecision {
  Verdict verdict;
  bool decided = false;
};

template <typename L>
void attach_false_witness(const L& logic, const Formula& premise, const Formula& beta,
                          QueryReport& report) {
  for (const auto& m : logic.minimal_models_in_class(premise))
    if (!logic.sat(m, beta)) {
      report.witnesses.push_back(logic.serialize(m));
      return;
    }
}

// Per-logic pieces --------------------------------------------------------

bool conservative_gate(const GroundS5Logic& l, const Formula& beta,
                       const Formula& full, QueryReport& report) {
  if (!classify(beta, SyntacticClass::Box)) return false;
  report.classifier = to_string(SyntacticClass::Box);
  if (!expressibility_ok(l) || !smooth_ok(l, {full, beta})) {
    report.notes.push_back("side conditions failed; conservative route skipped");
    return false;
  }
  return true;
}

bool conservative_gate(const FinCircLogic& l, const Formula& beta, const Formula& full,
                       QueryReport& report) {
  if (!classify(beta, l.upward_class(), l.class_pred())) return false;
  report.classifier = to_string(l.upward_class());
  if (!expressibility_ok(l) || !smooth_ok(l, {full, beta})) {
    report.notes.push_back("side conditions failed; conservative route skipped");
    return false;
  }
  return true;
}

// MTEL: TB membership alone does not imply conservativity (F(Kq) is the §4
// counterexample); Prop 34's semantic test gates the reduction instead.
bool conservative_gate(const MtelLogic& l, const Formula& beta, const Formula&,
                       QueryReport& report) {
  if (l.signature().atoms().size() > 2) return false;  // needs the full class
  if (classify(beta, SyntacticClass::Tb)) report.classifier = to_string(SyntacticClass::Tb);
  const Mtel& engine = l.engine();
  for (const auto& m : l.models())
    if (!engine.is_totally_ignorant(m) && !engine.sat(m, beta)) return false;
  report.notes.push_back("prop34 semantic test passed");
  return true;
}

bool is_smooth_logic(const GroundS5Logic&) { return true; }
bool is_smooth_logic(const FinCircLogic&) { return true; }
bool is_smooth_logic(const MtelLogic&) { return false; }  // F(Kp) has no minimal model

void mtel_certification(const MtelLogic& l, const Formula& premise, QueryReport& report) {
  auto mm = l.engine().minimal_models(premise, l.horizon());
  report.certified = mm.certified.size();
  report.uncertified = mm.uncertified.size();
  for (bool d : mm.divergent) report.divergent += d;
  for (size_t i = 0; i < mm.uncertified.size(); ++i)
    if (!mm.divergent[i]) report.fully_certified = false;
}
void mtel_certification(const GroundS5Logic& l, const Formula& premise,
                        QueryReport& report) {
  report.certified = l.minimal_models_in_class(premise).size();
}
void mtel_certification(const FinCircLogic& l, const Formula& premise,
                        QueryReport& report) {
  report.certified = l.minimal_models_in_class(premise).size();
}

}  // namespace

QueryReport run_query(const Query& q, const RunOptions& opt) {
  if (q.premise.empty()) throw std::invalid_argument("query needs a premise");
  QueryReport report;

  Formula premise_only = conj(q.premise);
  Formula full = q.phi ? land(premise_only, *q.phi) : premise_only;

  std::visit(
      [&](const auto& logic) {
        // (1) conservative reduction: beta kept under any added premise, so
        // the classical consequence answers the preferential query (Cor 37)
        if (opt.allow_conservative) {
          StageTimer t(report, "conservative");
          if (conservative_gate(logic, q.conclusion, full, report)) {
            bool ok = logic.classical_entails(full, q.conclusion);
            report.verdict = bool_verdict(ok);
            report.route = Route::ConservativeReduction;
            if (!ok) {
              if (auto w = classical_countermodel(logic, full, q.conclusion))
                report.witnesses.push_back(*w);
            }
            return;
          }
        }

        // (2) phi in the downward class respects monotonicity (Prop 14):
        // old conclusions survive, so try the premise without phi
        if (opt.allow_dp_add && q.phi) {
          StageTimer t(report, "dp-add");
          bool member = false;
          try {
            member = classify(*q.phi, logic.downward_class(), logic.class_pred());
          } catch (const std::invalid_argument&) {
            member = false;
          }
          if (member && logic.entails(premise_only, q.conclusion) == Verdict::True) {
            report.classifier = to_string(logic.downward_class());
            report.verdict = Verdict::True;
            report.route = Route::DownwardPersistentAdd;
            mtel_certification(logic, premise_only, report);
            return;
          }
        }

        // (2b) upward-persistent conclusions survive added premises in
        // smooth logics (Prop 29)
        if (opt.allow_up_keep && q.phi && is_smooth_logic(logic)) {
          StageTimer t(report, "up-keep");
          bool member = false;
          try {
            member = classify(q.conclusion, logic.upward_class(), logic.class_pred());
          } catch (const std::invalid_argument&) {
            member = false;
          }
          if (member && logic.entails(premise_only, q.conclusion) == Verdict::True) {
            report.classifier = to_string(logic.upward_class());
            report.verdict = Verdict::True;
            report.route = Route::UpwardPersistentKeep;
            mtel_certification(logic, premise_only, report);
            return;
          }
        }

        // (3) caller-supplied split: derive beta from a prefix of the
        // premise if the rest is harmless (Prop 14 / Prop 29)
        if (q.split && *q.split >= 1 && *q.split < q.premise.size()) {
          StageTimer t(report, "local-split");
          std::vector<Formula> head(q.premise.begin(),
                                    q.premise.begin() + static_cast<long>(*q.split));
          std::vector<Formula> rest(q.premise.begin() + static_cast<long>(*q.split),
                                    q.premise.end());
          if (q.phi) rest.push_back(*q.phi);
          bool rest_dp = true;
          for (const Formula& r : rest) {
            try {
              rest_dp = rest_dp && classify(r, logic.downward_class(), logic.class_pred());
            } catch (const std::invalid_argument&) {
              rest_dp = false;
            }
          }
          bool beta_up = false;
          try {
            beta_up = is_smooth_logic(logic) &&
                      classify(q.conclusion, logic.upward_class(), logic.class_pred());
          } catch (const std::invalid_argument&) {
            beta_up = false;
          }
          if ((rest_dp || beta_up) &&
              logic.entails(conj(head), q.conclusion) == Verdict::True) {
            report.verdict = Verdict::True;
            report.route = Route::LocalSplit;
            report.notes.push_back(rest_dp ? "rest of premise downward persistent"
                                           : "conclusion upward persistent");
            mtel_certification(logic, conj(head), report);
            return;
          }
        }

        // (4) direct preferential entailment
        {
          StageTimer t(report, "direct");
          report.verdict = logic.entails(full, q.conclusion);
          report.route = Route::Direct;
          mtel_certification(logic, full, report);
          if (report.verdict == Verdict::False)
            attach_false_witness(logic, full, q.conclusion, report);
        }
      },
      q.logic);

  if (!opt.timings) report.stage_ms.clear();
  return report;
}

std::string QueryReport::to_text(bool with_timings) const {
  std::ostringstream out;
  out << "verdict: " << preflog::to_string(verdict) << "\n";
  out << "route: " << preflog::to_string(route) << "\n";
  if (classifier) out << "classifier: " << *classifier << "\n";
  out << "certified: " << certified << " uncertified: " << uncertified
      << " divergent: " << divergent << "\n";
  out << "fully-certified: " << (fully_certified ? "yes" : "no") << "\n";
  for (const auto& w : witnesses) out << "witness: " << w << "\n";
  for (const auto& n : notes) out << "note: " << n << "\n";
  if (with_timings)
    for (const auto& [stage, ms] : stage_ms) out << "time: " << stage << " " << ms << "ms\n";
  return out.str();
}

std::string QueryReport::to_json(bool with_timings) const {
  nlohmann::ordered_json j;
  j["verdict"] = preflog::to_string(verdict);
  j["route"] = preflog::to_string(route);
  if (classifier) j["classifier"] = *classifier;
  j["certified"] = certified;
  j["uncertified"] = uncertified;
  j["divergent"] = divergent;
  j["fully_certified"] = fully_certified;
  j["witnesses"] = witnesses;
  j["notes"] = notes;
  if (with_timings) {
    nlohmann::ordered_json t = nlohmann::ordered_json::object();
    for (const auto& [stage, ms] : stage_ms) t[stage] = ms;
    j["timings_ms"] = t;
  }
  return j.dump(2);
}

}  // namespace preflog
