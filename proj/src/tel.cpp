#include "preflog/tel.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "preflog/syntactic.hpp"

namespace preflog {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

TelcModel::TelcModel(std::vector<S5Model> states, std::vector<int> changes)
    : states_(std::move(states)), changes_(std::move(changes)) {
  if (states_.empty()) throw std::invalid_argument("TELC model needs a state");
  if (changes_.size() + 1 != states_.size())
    throw std::invalid_argument("TELC model needs one change point per state switch");
  int prev_t = 0;
  for (size_t i = 0; i < changes_.size(); ++i) {
    if (changes_[i] <= prev_t)
      throw std::invalid_argument("change points must be strictly increasing from 1");
    prev_t = changes_[i];
  }
  for (size_t i = 0; i < states_.size(); ++i) {
    if (states_[i].mask == 0) throw std::invalid_argument("S5 states are non-empty");
    if (i > 0) {
      // knowledge never decreases and consecutive states differ
      bool superset = (states_[i - 1].mask & states_[i].mask) == states_[i].mask;
      if (!superset || states_[i - 1].mask == states_[i].mask)
        throw std::invalid_argument("states must strictly shrink along the chain");
    }
  }
}

const S5Model& TelcModel::state_at(int t) const {
  size_t i = 0;
  while (i < changes_.size() && changes_[i] <= t) ++i;
  return states_[i];
}

bool TelcModel::operator<(const TelcModel& o) const {
  if (states_.size() != o.states_.size()) return states_.size() < o.states_.size();
  for (size_t i = 0; i < states_.size(); ++i)
    if (states_[i].mask != o.states_[i].mask) return states_[i].mask < o.states_[i].mask;
  return changes_ < o.changes_;
}

bool telc_leq(const TelcModel& m1, const TelcModel& m2) {
  // pointwise on the merged boundaries; tails are constant
  std::vector<int> ts{0};
  ts.insert(ts.end(), m1.changes().begin(), m1.changes().end());
  ts.insert(ts.end(), m2.changes().begin(), m2.changes().end());
  for (int t : ts)
    if (!dok_leq(m1.state_at(t), m2.state_at(t))) return false;
  return true;
}

Mtel::Mtel(Signature sig, int bound) : s5_(std::move(sig), bound) {}

namespace {

// Flattened formula for repeated trace evaluation. K/M nodes (whose
// subtrees are pure S5 by the Def 8 restriction) are evaluated per state
// through a shared per-mask cache.
struct Compiled {
  struct Node {
    Op op;
    int a = -1, b = -1;   // child indices
    int epi = -1;         // index into epistemic node list
  };
  std::vector<Node> nodes;          // postorder; root last
  std::vector<Formula> epistemic;   // K/M subtrees
  int depth = 0;

  const GroundS5* s5 = nullptr;
  mutable std::map<uint32_t, std::vector<uint8_t>> state_truth;

  const std::vector<uint8_t>& truths_for(uint32_t mask) const {
    auto it = state_truth.find(mask);
    if (it != state_truth.end()) return it->second;
    std::vector<uint8_t> row(epistemic.size());
    for (size_t i = 0; i < epistemic.size(); ++i)
      row[i] = s5->sat(S5Model{mask}, epistemic[i]);
    return state_truth.emplace(mask, std::move(row)).first->second;
  }
};

int compile_rec(const Formula& f, Compiled& out) {
  Compiled::Node n;
  n.op = f.op();
  switch (f.op()) {
    case Op::Know:
    case Op::Maybe:
      n.epi = static_cast<int>(out.epistemic.size());
      out.epistemic.push_back(f);
      break;
    case Op::Top:
    case Op::Bot:
      break;
    case Op::Atom:
      throw std::invalid_argument("bare atom in a TEL formula (not subjective)");
    case Op::Forall:
    case Op::Exists:
    case Op::Pred:
    case Op::Eq:
      throw std::invalid_argument("first-order construct in a TEL formula");
    default:
      n.a = compile_rec(f.child(0), out);
      if (f.arity() > 1) n.b = compile_rec(f.child(1), out);
      break;
  }
  out.nodes.push_back(n);
  return static_cast<int>(out.nodes.size() - 1);
}

Compiled compile(const Formula& f, const GroundS5& s5) {
  Compiled c;
  c.s5 = &s5;
  compile_rec(f, c);
  c.depth = temporal_depth(f);
  return c;
}

// Truth of every node at every time in [0, horizon]; horizon must be at
// least last_change + depth + 1 so that the constant tail is represented.
std::vector<std::vector<uint8_t>> eval_trace(const Compiled& c, const TelcModel& m,
                                             int horizon) {
  int T = horizon;
  std::vector<std::vector<uint8_t>> val(c.nodes.size());
  std::vector<const std::vector<uint8_t>*> state_rows(T + 1);
  for (int t = 0; t <= T; ++t) state_rows[t] = &c.truths_for(m.state_at(t).mask);
  for (size_t i = 0; i < c.nodes.size(); ++i) {
    const auto& n = c.nodes[i];
    std::vector<uint8_t>& v = val[i];
    v.assign(T + 1, 0);
    switch (n.op) {
      case Op::Know:
      case Op::Maybe:
        for (int t = 0; t <= T; ++t) v[t] = (*state_rows[t])[n.epi];
        break;
      case Op::Top:
        v.assign(T + 1, 1);
        break;
      case Op::Bot:
        break;
      case Op::Not:
        for (int t = 0; t <= T; ++t) v[t] = !val[n.a][t];
        break;
      case Op::And:
        for (int t = 0; t <= T; ++t) v[t] = val[n.a][t] && val[n.b][t];
        break;
      case Op::Or:
        for (int t = 0; t <= T; ++t) v[t] = val[n.a][t] || val[n.b][t];
        break;
      case Op::Implies:
        for (int t = 0; t <= T; ++t) v[t] = !val[n.a][t] || val[n.b][t];
        break;
      case Op::Past: {  // strict past, prefix scan
        uint8_t seen = 0;
        for (int t = 0; t <= T; ++t) {
          v[t] = seen;
          seen |= val[n.a][t];
        }
        break;
      }
      case Op::Hist: {  // H = ~P~
        uint8_t all = 1;
        for (int t = 0; t <= T; ++t) {
          v[t] = all;
          all &= val[n.a][t];
        }
        break;
      }
      case Op::Future: {
        // strict future; beyond T the child is constant and equals val[T]
        v[T] = val[n.a][T];
        for (int t = T - 1; t >= 0; --t) v[t] = v[t + 1] || val[n.a][t + 1];
        break;
      }
      case Op::Glob: {  // G = ~F~
        v[T] = val[n.a][T];
        for (int t = T - 1; t >= 0; --t) v[t] = v[t + 1] && val[n.a][t + 1];
        break;
      }
      case Op::Always: {  // [] = H & id & G: true iff the child holds at all times
        uint8_t all = 1;
        for (int t = 0; t <= T; ++t) all &= val[n.a][t];
        v.assign(T + 1, all);
        break;
      }
      default:
        throw std::logic_error("eval_trace: unhandled op");
    }
  }
  return val;
}

bool sat_at(const Compiled& c, const TelcModel& m, int t) {
  int T = m.last_change() + c.depth + 1;
  if (t > T) t = T;  // truth is constant beyond the stabilization point
  auto val = eval_trace(c, m, std::max(T, t));
  return val.back()[t];
}

}  // namespace

bool Mtel::sat(const TelcModel& m, int t, const Formula& f) const {
  Compiled c = compile(f, s5_);
  return sat_at(c, m, t);
}

bool Mtel::sat(const TelcModel& m, const Formula& f) const { return sat(m, 0, f); }

std::vector<TelcModel> Mtel::enumerate(const std::vector<uint32_t>& state_masks,
                                       int h) const {
  // chains of strictly shrinking states from state_masks, each chain
  // combined with every strictly increasing change schedule within [1, h]
  std::vector<TelcModel> out;
  std::vector<std::vector<S5Model>> chains;
  std::vector<S5Model> cur;
  auto build = [&](auto&& self, uint32_t prev, bool root) -> void {
    for (uint32_t mask : state_masks) {
      if (!root && ((prev & mask) != mask || mask == prev)) continue;
      cur.push_back({mask});
      chains.push_back(cur);
      self(self, mask, false);
      cur.pop_back();
    }
  };
  build(build, 0, true);

  for (const auto& ch : chains) {
    size_t k = ch.size() - 1;  // number of changes
    if (k == 0) {
      out.emplace_back(ch, std::vector<int>{});
      continue;
    }
    if (static_cast<int>(k) > h) continue;
    std::vector<int> sched;
    auto pick = [&](auto&& self, int min_t) -> void {
      if (sched.size() == k) {
        out.emplace_back(ch, sched);
        return;
      }
      int need = static_cast<int>(k - sched.size());
      for (int t = min_t; t + need - 1 <= h; ++t) {
        sched.push_back(t);
        self(self, t + 1);
        sched.pop_back();
      }
    };
    pick(pick, 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TelcModel> Mtel::models(int h) const {
  if (s5_.num_atoms() > 2)
    throw BoundExceeded("full TELC enumeration supports at most 2 atoms");
  std::vector<uint32_t> masks;
  for (uint32_t m = 1; m <= s5_.full_mask(); ++m) masks.push_back(m);
  return enumerate(masks, h);
}

std::optional<std::vector<uint32_t>> Mtel::flat_state_lattice(const Formula& f) const {
  // flat: every K/M argument is propositional
  std::vector<uint32_t> seeds{s5_.full_mask()};
  bool flat = true;
  auto walk = [&](auto&& self, const Formula& g) -> void {
    if (!flat) return;
    if (g.op() == Op::Know || g.op() == Op::Maybe) {
      const Formula& arg = g.child(0);
      auto propositional = [&](auto&& rec, const Formula& x) -> bool {
        switch (x.op()) {
          case Op::Atom:
          case Op::Top:
          case Op::Bot:
            return true;
          case Op::Not:
          case Op::And:
          case Op::Or:
          case Op::Implies: {
            for (size_t i = 0; i < x.arity(); ++i)
              if (!rec(rec, x.child(i))) return false;
            return true;
          }
          default:
            return false;
        }
      };
      if (!propositional(propositional, arg)) {
        flat = false;
        return;
      }
      // worlds of the K-argument: K(chi) -> worlds(chi); M(chi) = ~K~chi
      uint32_t w = 0;
      for (int v = 0; v < s5_.num_worlds(); ++v)
        if (s5_.world_sat(v, arg)) w |= 1u << v;
      if (g.op() == Op::Maybe) w = ~w & s5_.full_mask();
      if (w) seeds.push_back(w);
      return;
    }
    for (size_t i = 0; i < g.arity(); ++i) self(self, g.child(i));
  };
  walk(walk, f);
  if (!flat) return std::nullopt;

  // intersection closure, discarding the empty set (no valid S5 state)
  std::vector<uint32_t> closed;
  auto add = [&](uint32_t m) {
    if (m && std::find(closed.begin(), closed.end(), m) == closed.end()) {
      closed.push_back(m);
      return true;
    }
    return false;
  };
  for (uint32_t s : seeds) add(s);
  bool changed = true;
  while (changed) {
    changed = false;
    size_t n = closed.size();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        changed |= add(closed[i] & closed[j]);
  }
  std::sort(closed.begin(), closed.end());
  return closed;
}

namespace {

// Variant of m with change i delayed by d steps; collapses the segment when
// it runs into the next change point. Always strictly below m.
TelcModel delay_change(const TelcModel& m, size_t i, int d) {
  std::vector<S5Model> states = m.states();
  std::vector<int> changes = m.changes();
  int target = changes[i] + d;
  if (i + 1 < changes.size() && target >= changes[i + 1]) {
    // segment i+1 vanishes; its state drops out of the chain
    states.erase(states.begin() + static_cast<long>(i) + 1);
    changes.erase(changes.begin() + static_cast<long>(i));
  } else {
    changes[i] = target;
  }
  return TelcModel(std::move(states), std::move(changes));
}

}  // namespace

MtelMinimalResult Mtel::minimal_models(const Formula& f, Horizon hz) const {
  require_subjective_tel(f);
  if (hz.h < 1) throw std::invalid_argument("horizon must be at least 1");

  std::vector<uint32_t> state_masks;
  if (auto lattice = flat_state_lattice(f); lattice.has_value()) {
    state_masks = std::move(*lattice);
  } else if (s5_.num_atoms() <= 2) {
    for (uint32_t m = 1; m <= s5_.full_mask(); ++m) state_masks.push_back(m);
  } else {
    throw BoundExceeded(
        "nested K/M over more than 2 atoms exceeds the enumeration bound");
  }

  Compiled c = compile(f, s5_);
  std::vector<TelcModel> sat_models;
  for (TelcModel& m : enumerate(state_masks, hz.h))
    if (sat_at(c, m, 0)) sat_models.push_back(std::move(m));

  // state profile over [0, h]; the tail is constant from h on, so the
  // pointwise order is decided on these entries
  auto profile = [&](const TelcModel& m) {
    std::vector<uint32_t> p(static_cast<size_t>(hz.h) + 1);
    for (int t = 0; t <= hz.h; ++t) p[t] = m.state_at(t).mask;
    return p;
  };
  std::vector<std::vector<uint32_t>> profs;
  profs.reserve(sat_models.size());
  for (const TelcModel& m : sat_models) profs.push_back(profile(m));

  // reject candidates strictly below which an enumerated model satisfies f
  std::vector<TelcModel> survivors;
  for (size_t i = 0; i < sat_models.size(); ++i) {
    bool beaten = false;
    for (size_t j = 0; j < sat_models.size() && !beaten; ++j) {
      if (j == i) continue;
      bool leq = true;
      for (int t = 0; t <= hz.h && leq; ++t)
        leq = (profs[j][t] & profs[i][t]) == profs[i][t];
      beaten = leq;  // distinct enumerated models, so leq here is strict
    }
    if (!beaten) survivors.push_back(sat_models[i]);
  }

  MtelMinimalResult out;
  for (const TelcModel& m : survivors) {
    bool killed = false;
    bool divergent = false;
    for (size_t i = 0; i < m.changes().size(); ++i) {
      bool all_delays_beat = true;
      bool any_delay_beats = false;
      for (int d = 1; d <= hz.postpone_rounds; ++d) {
        TelcModel v = delay_change(m, i, d);
        bool v_sat = sat_at(c, v, 0);
        any_delay_beats |= v_sat;
        all_delays_beat &= v_sat;
      }
      killed |= any_delay_beats;
      divergent |= (hz.postpone_rounds > 0 && all_delays_beat);
    }
    if (!killed) {
      out.certified.push_back(m);
    } else {
      out.uncertified.push_back(m);
      out.divergent.push_back(divergent);
    }
  }
  return out;
}

Verdict Mtel::entails(const Formula& alpha, const Formula& beta, Horizon hz) const {
  require_subjective_tel(alpha);
  require_subjective_tel(beta);
  MtelMinimalResult mm = minimal_models(alpha, hz);
  Compiled cb = compile(beta, s5_);
  for (const TelcModel& m : mm.certified)
    if (!sat_at(cb, m, 0)) return Verdict::False;
  // Uncertified candidates are provably non-minimal here (a postponed
  // variant beat them), but only divergent ones are safely dismissed; a
  // non-divergent chain may bottom out past the horizon.
  for (size_t i = 0; i < mm.uncertified.size(); ++i)
    if (!mm.divergent[i] && !sat_at(cb, mm.uncertified[i], 0)) return Verdict::Unknown;
  return Verdict::True;
}

Verdict Mtel::entails(const Formula& alpha, const Formula& beta) const {
  return entails(alpha, beta, default_horizon(alpha, beta));
}

Horizon Mtel::default_horizon(const Formula& alpha, const Formula& beta) const {
  Horizon hz;
  hz.h = std::max(1, temporal_depth(land(alpha, beta)) + s5_.num_worlds() - 1);
  hz.postpone_rounds = 2;
  return hz;
}

bool Mtel::sim_equiv(const Formula& f, const Formula& g, Horizon hz) const {
  require_subjective_tel(f);
  require_subjective_tel(g);
  int h = hz.h + std::max(temporal_depth(f), temporal_depth(g));
  Compiled cf = compile(f, s5_);
  Compiled cg = compile(g, s5_);
  for (const TelcModel& m : models(h))
    if (sat_at(cf, m, 0) != sat_at(cg, m, 0)) return false;
  return true;
}

bool Mtel::classical_entails(const Formula& alpha, const Formula& beta,
                             Horizon hz) const {
  require_subjective_tel(alpha);
  require_subjective_tel(beta);
  Compiled ca = compile(alpha, s5_);
  Compiled cb = compile(beta, s5_);
  for (const TelcModel& m : models(hz.h))
    if (sat_at(ca, m, 0) && !sat_at(cb, m, 0)) return false;
  return true;
}

TelcModel Mtel::totally_ignorant() const {
  return TelcModel({S5Model{s5_.full_mask()}}, {});
}

bool Mtel::is_totally_ignorant(const TelcModel& m) const {
  // Def 33 via the constant-model shortcut: state = Mod(P) everywhere.
  for (const S5Model& s : m.states())
    if (s.mask != s5_.full_mask()) return false;
  return true;
}

Formula Mtel::at_time(int i) const {
  Formula p = top();
  for (int k = 0; k < i; ++k) p = past(p);
  Formula hpart = bot();
  for (int k = 0; k < i + 1; ++k) hpart = hist(hpart);
  return land(p, hpart);
}

Formula Mtel::preference_witness(const TelcModel& m) const {
  std::vector<Formula> parts;
  for (int i = 0; i <= m.last_change(); ++i)
    parts.push_back(always(implies(at_time(i), s5_.preference_witness(m.state_at(i)))));
  return conj(parts);
}

Formula Mtel::point_formula(const TelcModel& m, int h) const {
  std::vector<Formula> parts;
  for (int i = 0; i <= h; ++i)
    parts.push_back(always(implies(at_time(i), s5_.point_formula(m.state_at(i)))));
  return conj(parts);
}

std::string Mtel::serialize(const TelcModel& m) const {
  std::ostringstream out;
  for (size_t i = 0; i < m.states().size(); ++i) {
    if (i) out << " ; ";
    int from = i == 0 ? 0 : m.changes()[i - 1];
    out << s5_.serialize(m.states()[i]) << "@[" << from << ",";
    if (i + 1 < m.states().size()) out << m.changes()[i] << ")";
    else out << "inf)";
  }
  return out.str();
}

void Mtel::require_subjective_tel(const Formula& f) const {
  check_well_formed(f, s5_.sig(), Lang::TEL);
  if (!is_subjective(f))
    throw std::invalid_argument("MTEL is defined over subjective TEL formulae: " +
                                to_string(f));
}

}  // namespace preflog
