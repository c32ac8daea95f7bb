// Command-line front end for the preferential entailment engines.
//
//   preflog entail --logic gs5 --atoms p,q "K p" "~K q"
//   preflog classify --class diam "M(~p)" --atoms p
//   preflog pipeline --logic gs5 --atoms p,q --premise "K p & K q" --conclusion "K p"
//   preflog selftest
//
// Exit codes: 0 = verdict produced (including false), 1 = usage error,
// 2 = enumeration bound exceeded, or unknown without --allow-unknown.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "preflog/corpus.hpp"
#include "preflog/defaults.hpp"
#include "preflog/persistence.hpp"
#include "preflog/pipeline.hpp"

using namespace preflog;
using nlohmann::ordered_json;

namespace {

struct Options {
  std::string logic = "gs5";
  std::string atoms = "p,q";
  std::string preds = "P/1";
  std::string pred = "P";
  int horizon = 0;  // 0 = default per query
  int postpone = 2;
  int max_size = 3;
  int bound = 4;
  std::string format = "text";
  uint64_t seed = 1;
  bool allow_unknown = false;
  bool timings = false;
  bool dedup = false;
};

std::vector<std::string> split(const std::string& s, char d) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == d) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

Signature prop_signature(const Options& o) {
  std::vector<std::string> atoms;
  for (const std::string& a : split(o.atoms, ',')) {
    std::string t = trim(a);
    if (!t.empty()) atoms.push_back(t);
  }
  return Signature::propositional(atoms);
}

Signature fo_signature(const Options& o) {
  std::vector<PredDecl> decls;
  for (const std::string& p : split(o.preds, ',')) {
    std::string t = trim(p);
    if (t.empty()) continue;
    auto parts = split(t, '/');
    if (parts.size() != 2) throw CLI::ValidationError("--preds needs Name/arity entries");
    decls.push_back({trim(parts[0]), std::stoi(parts[1])});
  }
  return Signature::first_order(decls);
}

LogicHandle make_logic(const Options& o, int depth_hint = 0) {
  if (o.logic == "gs5") return GroundS5Logic(prop_signature(o), o.bound);
  if (o.logic == "mtel") {
    Signature sig = prop_signature(o);
    Horizon hz;
    hz.h = o.horizon > 0
               ? o.horizon
               : std::max(1, depth_hint + (1 << sig.atoms().size()) - 1);
    hz.postpone_rounds = o.postpone;
    return MtelLogic(std::move(sig), hz, o.bound);
  }
  if (o.logic == "circ-pred")
    return FinCircLogic(fo_signature(o), CircMode::Pred, o.pred, o.max_size);
  if (o.logic == "circ-dom")
    return FinCircLogic(fo_signature(o), CircMode::Dom, "", o.max_size);
  throw CLI::ValidationError("unknown --logic: " + o.logic);
}

Formula parse_for(const LogicHandle& h, const Options&, const std::string& text) {
  return std::visit([&](const auto& l) { return parse(text, l.signature(), logic_lang(h)); },
                    h);
}

void emit(const Options& o, const std::string& key, const std::string& value,
          ordered_json extra = {}) {
  if (o.format == "json") {
    ordered_json j = std::move(extra);
    j[key] = value;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << value << "\n";
    for (auto& [k, v] : extra.items())
      std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

int verdict_exit(const Options& o, Verdict v) {
  if (v == Verdict::Unknown && !o.allow_unknown) return 2;
  return 0;
}

int run_entail(const Options& o, const std::string& alpha, const std::string& beta) {
  LogicHandle h = make_logic(o);
  Formula a = parse_for(h, o, alpha);
  Formula b = parse_for(h, o, beta);
  if (std::holds_alternative<MtelLogic>(h) && o.horizon == 0) {
    // recompute with the depth-aware default horizon
    Options o2 = o;
    o2.horizon = std::max(
        1, temporal_depth(land(a, b)) +
               (1 << std::get<MtelLogic>(h).signature().atoms().size()) - 1);
    h = make_logic(o2);
  }
  Verdict v = std::visit([&](const auto& l) { return l.entails(a, b); }, h);
  emit(o, "verdict", to_string(v));
  return verdict_exit(o, v);
}

int run_classify(const Options& o, const std::string& cls_name, const std::string& text) {
  SyntacticClass cls = syntactic_class_from_string(cls_name);
  bool fo = cls == SyntacticClass::NegativeIn || cls == SyntacticClass::PositiveIn ||
            cls == SyntacticClass::Universal || cls == SyntacticClass::Existential;
  Signature sig = fo ? fo_signature(o) : prop_signature(o);
  Lang lang = fo ? Lang::FO
                 : (cls == SyntacticClass::Td || cls == SyntacticClass::Tb ||
                            cls == SyntacticClass::SubjectiveTel
                        ? Lang::TEL
                        : Lang::S5);
  Formula f = parse(text, sig, lang);
  bool member = classify(f, cls, o.pred);
  emit(o, "member", member ? "true" : "false");
  return 0;
}

int run_persist(const Options& o, const std::string& text) {
  LogicHandle h = make_logic(o);
  Formula f = parse_for(h, o, text);
  return std::visit(
      [&](const auto& l) {
        auto v = persistence_oracle(l, f);
        ordered_json extra;
        extra["downward"] = v.downward;
        extra["upward"] = v.upward;
        if (v.downward_witness)
          extra["downward_witness"] = {l.serialize(v.downward_witness->first),
                                       l.serialize(v.downward_witness->second)};
        if (v.upward_witness)
          extra["upward_witness"] = {l.serialize(v.upward_witness->first),
                                     l.serialize(v.upward_witness->second)};
        std::string summary = std::string("downward: ") + (v.downward ? "true" : "false") +
                              ", upward: " + (v.upward ? "true" : "false");
        emit(o, "persistence", summary, std::move(extra));
        return 0;
      },
      h);
}

int run_honest(const Options& o, const std::string& text) {
  GroundS5 e(prop_signature(o), o.bound);
  bool h = e.honest(parse(text, e.sig(), Lang::S5));
  emit(o, "honest", h ? "true" : "false");
  return 0;
}

int run_minimal(const Options& o, const std::string& text) {
  LogicHandle h = make_logic(o);
  Formula f = parse_for(h, o, text);
  if (const auto* gs5 = std::get_if<GroundS5Logic>(&h)) {
    ordered_json models = ordered_json::array();
    for (const auto& m : gs5->engine().minimal_models(f))
      models.push_back(gs5->serialize(m));
    ordered_json extra;
    extra["minimal_models"] = models;
    emit(o, "count", std::to_string(models.size()), std::move(extra));
    return 0;
  }
  if (const auto* mt = std::get_if<MtelLogic>(&h)) {
    Horizon hz = mt->horizon();
    if (o.horizon == 0)
      hz.h = std::max(1, temporal_depth(f) +
                             (1 << mt->signature().atoms().size()) - 1);
    auto mm = mt->engine().minimal_models(f, hz);
    ordered_json certified = ordered_json::array();
    for (const auto& m : mm.certified) certified.push_back(mt->serialize(m));
    ordered_json uncertified = ordered_json::array();
    for (const auto& m : mm.uncertified) uncertified.push_back(mt->serialize(m));
    ordered_json extra;
    extra["certified"] = certified;
    extra["uncertified"] = uncertified;
    emit(o, "count", std::to_string(mm.certified.size()), std::move(extra));
    return 0;
  }
  const auto& circ = std::get<FinCircLogic>(h);
  ordered_json models = ordered_json::array();
  for (const auto& m : circ.engine().minimal_models(f)) models.push_back(circ.serialize(m));
  ordered_json extra;
  extra["minimal_models"] = models;
  emit(o, "count", std::to_string(models.size()), std::move(extra));
  return 0;
}

S5Model parse_s5_model(const GroundS5& e, const std::string& s) { return e.parse_model(s); }

TelcModel parse_telc_model(const Mtel& e, const std::string& s) {
  std::vector<S5Model> states;
  std::vector<int> changes;
  for (std::string seg : split(s, ';')) {
    seg = trim(seg);
    size_t at = seg.find('@');
    if (at == std::string::npos) throw std::invalid_argument("bad TELC segment: " + seg);
    states.push_back(e.s5().parse_model(trim(seg.substr(0, at))));
    std::string range = seg.substr(at + 1);  // [a,b) or [a,inf)
    size_t comma = range.find(',');
    int from = std::stoi(range.substr(1, comma - 1));
    if (from > 0) changes.push_back(from);
  }
  return TelcModel(std::move(states), std::move(changes));
}

FoStructure parse_fo_structure(const FinCirc& e, const std::string& s) {
  FoStructure m;
  m.exts.resize(e.sig().preds().size());
  for (std::string part : split(s, ';')) {
    part = trim(part);
    size_t eq_pos = part.find('=');
    if (eq_pos == std::string::npos) throw std::invalid_argument("bad structure: " + s);
    std::string key = trim(part.substr(0, eq_pos));
    std::string val = trim(part.substr(eq_pos + 1));
    if (key == "domain") {
      if (!val.empty() && val[0] == '{') {
        for (const std::string& x : split(val.substr(1, val.size() - 2), ','))
          if (!trim(x).empty()) m.domain.push_back(std::stoi(trim(x)));
      } else {
        for (int i = 0; i < std::stoi(val); ++i) m.domain.push_back(i);
      }
      continue;
    }
    size_t pi = 0;
    while (pi < e.sig().preds().size() && e.sig().preds()[pi].name != key) ++pi;
    if (pi == e.sig().preds().size())
      throw std::invalid_argument("unknown predicate in structure: " + key);
    // val = {(0,1),(2,0)} or {}
    std::string inner = val.substr(1, val.size() - 2);
    size_t i = 0;
    while (i < inner.size()) {
      if (inner[i] != '(') {
        ++i;
        continue;
      }
      size_t close = inner.find(')', i);
      std::vector<int> tuple;
      for (const std::string& x : split(inner.substr(i + 1, close - i - 1), ','))
        tuple.push_back(std::stoi(trim(x)));
      m.exts[pi].insert(tuple);
      i = close + 1;
    }
  }
  return m;
}

int run_witness(const Options& o, const std::string& model_text, bool check) {
  LogicHandle h = make_logic(o);
  if (check) {
    bool ok = std::visit([&](const auto& l) { return check_expressibility(l); }, h);
    emit(o, "expressibility", ok ? "true" : "false");
    return 0;
  }
  if (const auto* gs5 = std::get_if<GroundS5Logic>(&h)) {
    Formula w = gs5->engine().preference_witness(parse_s5_model(gs5->engine(), model_text));
    emit(o, "witness", to_string(w));
    return 0;
  }
  if (const auto* mt = std::get_if<MtelLogic>(&h)) {
    Formula w = mt->engine().preference_witness(parse_telc_model(mt->engine(), model_text));
    emit(o, "witness", to_string(w));
    return 0;
  }
  const auto& circ = std::get<FinCircLogic>(h);
  Formula w = circ.engine().preference_witness(parse_fo_structure(circ.engine(), model_text));
  emit(o, "witness", to_string(w));
  return 0;
}

int run_default(const Options& o, const std::string& action, const std::string& file,
                const std::string& phi_text) {
  Signature sig = prop_signature(o);
  std::ifstream in(file);
  if (!in) throw CLI::ValidationError("cannot open " + file);
  std::stringstream buf;
  buf << in.rdbuf();
  DefaultTheory theory = parse_default_theory(buf.str(), sig);
  if (action == "translate") {
    emit(o, "formula", to_string(default_to_mtel(theory)));
    return 0;
  }
  if (action == "sceptical") {
    if (phi_text.empty()) throw CLI::ValidationError("sceptical needs a query formula");
    Mtel mtel(sig, o.bound);
    Formula phi = parse(phi_text, sig, Lang::S5);
    Verdict v;
    if (o.horizon > 0)
      v = sceptical_consequence(mtel, theory, phi, Horizon{o.horizon, o.postpone});
    else
      v = sceptical_consequence(mtel, theory, phi);
    emit(o, "verdict", to_string(v));
    return verdict_exit(o, v);
  }
  throw CLI::ValidationError("default action must be translate or sceptical");
}

int run_circ(const Options& o, const std::string& action, const std::string& mode,
             const std::string& alpha, const std::string& beta) {
  Options local = o;
  local.logic = mode == "pred" ? "circ-pred" : "circ-dom";
  if (action == "entail") {
    if (beta.empty()) throw CLI::ValidationError("circ entail needs two formulas");
    return run_entail(local, alpha, beta);
  }
  if (action == "minimal") return run_minimal(local, alpha);
  throw CLI::ValidationError("circ action must be entail or minimal");
}

int run_pipeline_query(const Options& o, const Query& q) {
  RunOptions ro;
  ro.timings = o.timings;
  QueryReport report = run_query(q, ro);
  if (o.format == "json")
    std::cout << report.to_json(o.timings) << "\n";
  else
    std::cout << report.to_text(o.timings);
  return verdict_exit(o, report.verdict);
}

// Batch line: `logic | premise [; premise]* | [phi |] conclusion` with the
// logic field carrying its parameters, e.g. `gs5:p,q` or `mtel:p,q:h=4`.
int run_batch(const Options& o, const std::string& file) {
  std::ifstream in(file);
  if (!in) throw CLI::ValidationError("cannot open " + file);
  std::string line;
  int rc = 0;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> fields = split(t, '|');
    if (fields.size() < 3 || fields.size() > 4)
      throw CLI::ValidationError("batch line " + std::to_string(lineno) +
                                 ": need logic | premise | [phi |] conclusion");
    Options local = o;
    std::vector<std::string> spec = split(trim(fields[0]), ':');
    local.logic = trim(spec[0]);
    if (spec.size() > 1) {
      if (local.logic == "gs5" || local.logic == "mtel") local.atoms = trim(spec[1]);
      else local.preds = trim(spec[1]);
    }
    for (size_t i = 2; i < spec.size(); ++i) {
      std::string p = trim(spec[i]);
      if (p.rfind("h=", 0) == 0) local.horizon = std::stoi(p.substr(2));
      else if (p.rfind("post=", 0) == 0) local.postpone = std::stoi(p.substr(5));
      else if (p.rfind("size=", 0) == 0) local.max_size = std::stoi(p.substr(5));
      else local.pred = p;
    }
    LogicHandle h = make_logic(local);
    Query q{h, {}, std::nullopt, Formula{}, std::nullopt};
    for (const std::string& part : split(trim(fields[1]), ';'))
      q.premise.push_back(parse_for(h, local, trim(part)));
    if (fields.size() == 4) q.phi = parse_for(h, local, trim(fields[2]));
    q.conclusion = parse_for(h, local, trim(fields.back()));
    std::cout << "# line " << lineno << "\n";
    rc = std::max(rc, run_pipeline_query(local, q));
  }
  return rc;
}

int run_selftest(const Options& o) {
  // the paper's worked examples, end to end through the public surface
  int failures = 0;
  auto expect = [&](const std::string& name, bool got, bool want) {
    bool ok = got == want;
    std::cout << (ok ? "pass  " : "FAIL  ") << name << "\n";
    failures += !ok;
  };

  GroundS5 gs5(Signature::propositional({"p", "q"}));
  auto s5f = [&](const char* s) { return parse(s, gs5.sig(), Lang::S5); };
  expect("Kp |=GS5 ~Kq", gs5.entails(s5f("K p"), s5f("~K q")), true);
  expect("Kp & Kq |/=GS5 ~Kq", gs5.entails(s5f("K p & K q"), s5f("~K q")), false);
  expect("Kp | Kq |=GS5 ~(Kp & Kq)", gs5.entails(s5f("K p | K q"), s5f("~(K p & K q)")),
         true);
  expect("(Kp | Kq) & M~p |=GS5 Kq",
         gs5.entails(s5f("(K p | K q) & M ~p"), s5f("K q")), true);
  expect("Kp | Kq |/=GS5 Kq", gs5.entails(s5f("K p | K q"), s5f("K q")), false);
  expect("Kp honest", gs5.honest(s5f("K p")), true);
  expect("Kp | Kq not honest", gs5.honest(s5f("K p | K q")), false);

  Mtel mtel(gs5.sig());
  auto telf = [&](const char* s) { return parse(s, gs5.sig(), Lang::TEL); };
  expect("F(Kp) |=MTEL F(Kq)",
         mtel.entails(telf("F K p"), telf("F K q")) == Verdict::True, true);
  expect("F(Kp) & Kp |/=MTEL F(Kq)",
         mtel.entails(telf("F K p & K p"), telf("F K q")) == Verdict::False, true);

  expect("M(~p) in DIAM", classify(s5f("M ~p"), SyntacticClass::Diam), true);
  expect("~K(q | Kp) passes the odd-negation check",
         odd_negation_heuristic(s5f("~K (q | K p)")), true);

  DefaultTheory t;
  t.rules.push_back({top(), parse("p", gs5.sig(), Lang::S5), parse("p", gs5.sig(), Lang::S5)});
  expect("normal default concludes p",
         sceptical_consequence(mtel, t, parse("p", gs5.sig(), Lang::S5)) == Verdict::True,
         true);
  expect("normal default does not conclude q",
         sceptical_consequence(mtel, t, parse("q", gs5.sig(), Lang::S5)) == Verdict::False,
         true);

  std::cout << (failures ? "FAILED " : "passed ") << "selftest ("
            << (13 - failures) << "/13)\n";
  (void)o;
  return failures ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"preferential entailment toolkit (Ground S5, MTEL, finite circumscription)"};
  app.require_subcommand(1);

  Options o;
  app.add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", o.seed);
  app.add_flag("--allow-unknown", o.allow_unknown);
  app.add_flag("--timings", o.timings);

  auto add_logic_opts = [&](CLI::App* cmd) {
    cmd->add_option("--logic", o.logic);
    cmd->add_option("--atoms", o.atoms);
    cmd->add_option("--preds", o.preds);
    cmd->add_option("--pred", o.pred);
    cmd->add_option("--horizon", o.horizon);
    cmd->add_option("--postpone", o.postpone);
    cmd->add_option("--max-size", o.max_size);
    cmd->add_option("--bound", o.bound);
  };

  std::string arg1, arg2, cls_name, file, mode = "pred", action;
  std::vector<std::string> premises;
  std::string phi_text, conclusion;
  int split_at = 0;
  bool check_flag = false;

  CLI::App* entail = app.add_subcommand("entail", "preferential entailment");
  add_logic_opts(entail);
  entail->add_option("alpha", arg1)->required();
  entail->add_option("beta", arg2)->required();

  CLI::App* classify_cmd = app.add_subcommand("classify", "syntactic class membership");
  add_logic_opts(classify_cmd);
  classify_cmd->add_option("--class", cls_name)->required();
  classify_cmd->add_option("formula", arg1)->required();

  CLI::App* persist = app.add_subcommand("persist", "semantic persistence oracle");
  add_logic_opts(persist);
  persist->add_option("formula", arg1)->required();

  CLI::App* honest = app.add_subcommand("honest", "unique-minimal-model check (gs5)");
  add_logic_opts(honest);
  honest->add_option("formula", arg1)->required();

  CLI::App* minimal = app.add_subcommand("minimal-models", "minimal models of a premise");
  add_logic_opts(minimal);
  minimal->add_option("formula", arg1)->required();

  CLI::App* witness = app.add_subcommand("witness", "Def 21 preference witness");
  add_logic_opts(witness);
  witness->add_flag("--check", check_flag, "verify expressibility over the class");
  witness->add_option("model", arg1);

  CLI::App* def = app.add_subcommand("default", "default-logic embedding");
  add_logic_opts(def);
  def->add_option("action", action)->required()->check(CLI::IsMember({"translate", "sceptical"}));
  def->add_option("--file", file)->required();
  def->add_option("phi", arg1);

  CLI::App* circ = app.add_subcommand("circ", "finite circumscription");
  add_logic_opts(circ);
  circ->add_option("action", action)->required()->check(CLI::IsMember({"entail", "minimal"}));
  circ->add_option("--mode", mode)->check(CLI::IsMember({"pred", "dom"}));
  circ->add_option("alpha", arg1)->required();
  circ->add_option("beta", arg2);

  CLI::App* pipeline = app.add_subcommand("pipeline", "the classify-reduce-dispatch prover");
  add_logic_opts(pipeline);
  pipeline->add_option("--premise", premises);
  pipeline->add_option("--phi", phi_text);
  pipeline->add_option("--conclusion", conclusion);
  pipeline->add_option("--split", split_at);
  pipeline->add_option("--batch", file);

  CLI::App* selftest = app.add_subcommand("selftest", "paper regression suite");
  add_logic_opts(selftest);

  CLI11_PARSE(app, argc, argv);

  try {
    if (entail->parsed()) return run_entail(o, arg1, arg2);
    if (classify_cmd->parsed()) return run_classify(o, cls_name, arg1);
    if (persist->parsed()) return run_persist(o, arg1);
    if (honest->parsed()) return run_honest(o, arg1);
    if (minimal->parsed()) return run_minimal(o, arg1);
    if (witness->parsed()) return run_witness(o, arg1, check_flag);
    if (def->parsed()) return run_default(o, action, file, arg1);
    if (circ->parsed()) return run_circ(o, action, mode, arg1, arg2);
    if (pipeline->parsed()) {
      if (!file.empty()) return run_batch(o, file);
      if (premises.empty() || conclusion.empty())
        throw CLI::ValidationError("pipeline needs --premise and --conclusion (or --batch)");
      LogicHandle h = make_logic(o);
      Query q{h, {}, std::nullopt, Formula{}, std::nullopt};
      for (const std::string& p : premises) q.premise.push_back(parse_for(h, o, p));
      if (!phi_text.empty()) q.phi = parse_for(h, o, phi_text);
      q.conclusion = parse_for(h, o, conclusion);
      if (split_at > 0) q.split = static_cast<size_t>(split_at);
      return run_pipeline_query(o, q);
    }
    if (selftest->parsed()) return run_selftest(o);
  } catch (const BoundExceeded& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error at position " << e.pos << ": " << e.what() << "\n";
    return 1;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
