#include "preflog/fo.hpp"

#include <algorithm>
#include <sstream>

#include "preflog/syntactic.hpp"

namespace preflog {

bool fo_sat(const FoStructure& s, const Signature& sig, const Formula& f,
            const VarEnv& env) {
  switch (f.op()) {
    case Op::Top: return true;
    case Op::Bot: return false;
    case Op::Not: return !fo_sat(s, sig, f.child(0), env);
    case Op::And: return fo_sat(s, sig, f.child(0), env) && fo_sat(s, sig, f.child(1), env);
    case Op::Or: return fo_sat(s, sig, f.child(0), env) || fo_sat(s, sig, f.child(1), env);
    case Op::Implies:
      return !fo_sat(s, sig, f.child(0), env) || fo_sat(s, sig, f.child(1), env);
    case Op::Forall:
    case Op::Exists: {
      VarEnv extended = env;
      extended.emplace_back(f.name(), 0);
      for (int e : s.domain) {
        extended.back().second = e;
        bool v = fo_sat(s, sig, f.child(0), extended);
        if (f.op() == Op::Forall && !v) return false;
        if (f.op() == Op::Exists && v) return true;
      }
      return f.op() == Op::Forall;
    }
    case Op::Pred: {
      const PredDecl* d = sig.pred_decl(f.name());
      if (!d) throw std::invalid_argument("unknown predicate: " + f.name());
      if (f.vars().size() != static_cast<size_t>(d->arity))
        throw std::invalid_argument("arity mismatch for " + f.name());
      std::vector<int> tuple;
      tuple.reserve(f.vars().size());
      for (const std::string& v : f.vars()) {
        auto it = std::find_if(env.rbegin(), env.rend(),
                               [&](const auto& p) { return p.first == v; });
        if (it == env.rend()) throw std::invalid_argument("unbound variable: " + v);
        tuple.push_back(it->second);
      }
      size_t pi = 0;
      while (sig.preds()[pi].name != f.name()) ++pi;
      return s.exts[pi].count(tuple) > 0;
    }
    case Op::Eq: {
      int vals[2];
      for (int i = 0; i < 2; ++i) {
        const std::string& v = f.vars()[i];
        auto it = std::find_if(env.rbegin(), env.rend(),
                               [&](const auto& p) { return p.first == v; });
        if (it == env.rend()) throw std::invalid_argument("unbound variable: " + v);
        vals[i] = it->second;
      }
      return vals[0] == vals[1];
    }
    default:
      throw std::invalid_argument("not a first-order formula");
  }
}

bool pred_leq(const FoStructure& m, const FoStructure& n, const Signature& sig,
              const std::string& p) {
  if (m.domain != n.domain) return false;
  for (size_t i = 0; i < sig.preds().size(); ++i) {
    if (sig.preds()[i].name == p) {
      if (!std::includes(n.exts[i].begin(), n.exts[i].end(), m.exts[i].begin(),
                         m.exts[i].end()))
        return false;  // need P^M ⊆ P^N
    } else if (m.exts[i] != n.exts[i]) {
      return false;
    }
  }
  return true;
}

bool dom_leq(const FoStructure& n, const FoStructure& m) {
  if (!std::includes(m.domain.begin(), m.domain.end(), n.domain.begin(),
                     n.domain.end()))
    return false;
  for (size_t i = 0; i < n.exts.size(); ++i) {
    // n's extension must be exactly m's tuples over n's domain
    std::set<std::vector<int>> restricted;
    for (const auto& t : m.exts[i]) {
      bool inside = true;
      for (int e : t)
        inside = inside && std::binary_search(n.domain.begin(), n.domain.end(), e);
      if (inside) restricted.insert(t);
    }
    if (n.exts[i] != restricted) return false;
  }
  return true;
}

namespace {

std::vector<std::vector<int>> all_tuples(const std::vector<int>& domain, int arity) {
  std::vector<std::vector<int>> out{{}};
  for (int i = 0; i < arity; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& t : out)
      for (int e : domain) {
        auto u = t;
        u.push_back(e);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

FinCirc::FinCirc(Signature sig, CircMode mode, std::string pred, int max_size)
    : sig_(std::move(sig)), mode_(mode), pred_(std::move(pred)), max_size_(max_size) {
  if (!sig_.is_first_order() || sig_.preds().empty())
    throw std::invalid_argument("circumscription needs a first-order signature");
  if (mode_ == CircMode::Pred) {
    for (size_t i = 0; i < sig_.preds().size(); ++i)
      if (sig_.preds()[i].name == pred_) pred_index_ = static_cast<int>(i);
    if (pred_index_ < 0)
      throw std::invalid_argument("circumscribed predicate not in signature: " + pred_);
  }
  if (max_size_ < 1 || max_size_ > 4)
    throw BoundExceeded("domain size bound must be between 1 and 4");

  // feasibility: a domain of size d carries prod 2^(d^arity) structures
  for (int d = 1; d <= max_size_; ++d) {
    double per = 0;
    for (const auto& p : sig_.preds()) {
      double tuples = 1;
      for (int i = 0; i < p.arity; ++i) tuples *= d;
      per += tuples;
    }
    if (per > 16) throw BoundExceeded("structure enumeration infeasible for this signature");
  }

  // enumerate: nonempty subdomains of {0..max_size-1} by (size, lex), then
  // every combination of predicate extensions
  std::vector<std::vector<int>> domains;
  for (int sz = 1; sz <= max_size_; ++sz) {
    std::vector<int> pick;
    auto rec = [&](auto&& self, int start) -> void {
      if (static_cast<int>(pick.size()) == sz) {
        domains.push_back(pick);
        return;
      }
      for (int e = start; e < max_size_; ++e) {
        pick.push_back(e);
        self(self, e + 1);
        pick.pop_back();
      }
    };
    rec(rec, 0);
  }

  for (const auto& dom : domains) {
    std::vector<std::vector<std::vector<int>>> tuple_space;
    for (const auto& p : sig_.preds()) tuple_space.push_back(all_tuples(dom, p.arity));

    FoStructure base;
    base.domain = dom;
    base.exts.resize(sig_.preds().size());
    auto rec = [&](auto&& self, size_t pi) -> void {
      if (pi == sig_.preds().size()) {
        models_.push_back(base);
        return;
      }
      const auto& tuples = tuple_space[pi];
      if (tuples.size() > 24) throw BoundExceeded("predicate tuple space too large");
      for (uint32_t mask = 0; mask < (1u << tuples.size()); ++mask) {
        base.exts[pi].clear();
        for (size_t t = 0; t < tuples.size(); ++t)
          if ((mask >> t) & 1u) base.exts[pi].insert(tuples[t]);
        self(self, pi + 1);
      }
      base.exts[pi].clear();
    };
    rec(rec, 0);
  }
  std::sort(models_.begin(), models_.end());

  // least-iso-representative flags for the dedup toggle
  canonical_.assign(models_.size(), 1);
  for (size_t i = 0; i < models_.size(); ++i)
    canonical_[i] = isomorphic_le(models_[i], models_[i], /*exact=*/false) ? 1 : 0;
}

namespace {

// All bijections between two equal-sized sorted domains.
std::vector<std::vector<std::pair<int, int>>> bijections(const std::vector<int>& a,
                                                         const std::vector<int>& b) {
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<int> perm = b;
  std::sort(perm.begin(), perm.end());
  do {
    std::vector<std::pair<int, int>> map;
    for (size_t i = 0; i < a.size(); ++i) map.emplace_back(a[i], perm[i]);
    out.push_back(std::move(map));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

FoStructure apply_map(const FoStructure& m,
                      const std::vector<std::pair<int, int>>& map) {
  auto image = [&](int e) {
    for (const auto& [from, to] : map)
      if (from == e) return to;
    throw std::logic_error("element outside map");
  };
  FoStructure out;
  out.domain.reserve(m.domain.size());
  for (int e : m.domain) out.domain.push_back(image(e));
  std::sort(out.domain.begin(), out.domain.end());
  out.exts.resize(m.exts.size());
  for (size_t i = 0; i < m.exts.size(); ++i)
    for (const auto& t : m.exts[i]) {
      std::vector<int> u;
      u.reserve(t.size());
      for (int e : t) u.push_back(image(e));
      out.exts[i].insert(std::move(u));
    }
  return out;
}

}  // namespace

// exact=true: is m isomorphic to n? exact=false: is m the lexicographically
// least structure among its isomorphic relabelings onto prefix domains?
bool FinCirc::isomorphic_le(const FoStructure& m, const FoStructure& n, bool exact) const {
  if (exact) {
    if (m.domain.size() != n.domain.size()) return false;
    for (const auto& map : bijections(m.domain, n.domain))
      if (apply_map(m, map) == n) return true;
    return false;
  }
  std::vector<int> prefix;
  for (size_t i = 0; i < m.domain.size(); ++i) prefix.push_back(static_cast<int>(i));
  for (const auto& map : bijections(m.domain, prefix))
    if (apply_map(m, map) < m) return false;
  return true;
}

bool FinCirc::sat(const FoStructure& m, const Formula& f) const {
  return fo_sat(m, sig_, f);
}

bool FinCirc::leq(const FoStructure& a, const FoStructure& b) const {
  return mode_ == CircMode::Pred ? pred_leq(a, b, sig_, pred_) : dom_leq(a, b);
}

std::vector<FoStructure> FinCirc::minimal_models(const Formula& alpha) const {
  require_sentence(alpha);
  std::vector<const FoStructure*> sat_set;
  for (size_t i = 0; i < models_.size(); ++i)
    if (sat(models_[i], alpha)) sat_set.push_back(&models_[i]);
  std::vector<FoStructure> out;
  for (size_t i = 0; i < sat_set.size(); ++i) {
    if (dedup_ && !canonical_[static_cast<size_t>(sat_set[i] - models_.data())]) continue;
    bool minimal = true;
    for (size_t j = 0; j < sat_set.size() && minimal; ++j)
      if (i != j && leq(*sat_set[j], *sat_set[i]) && !(*sat_set[j] == *sat_set[i]))
        minimal = false;
    if (minimal) out.push_back(*sat_set[i]);
  }
  return out;
}

bool FinCirc::entails(const Formula& alpha, const Formula& beta) const {
  require_sentence(beta);
  for (const FoStructure& m : minimal_models(alpha))
    if (!sat(m, beta)) return false;
  return true;
}

bool FinCirc::entails_classical(const Formula& alpha, const Formula& beta) const {
  require_sentence(alpha);
  require_sentence(beta);
  for (size_t i = 0; i < models_.size(); ++i) {
    if (dedup_ && !canonical_[i]) continue;
    if (sat(models_[i], alpha) && !sat(models_[i], beta)) return false;
  }
  return true;
}

bool FinCirc::smooth(const std::vector<Formula>& sample) const {
  for (const Formula& alpha : sample) {
    std::vector<FoStructure> mins = minimal_models(alpha);
    for (const FoStructure& m : models_) {
      if (!sat(m, alpha)) continue;
      bool found = false;
      for (const FoStructure& n : mins)
        if (leq(n, m)) {
          found = true;
          break;
        }
      if (!found) return false;
    }
  }
  return true;
}

Formula FinCirc::preference_witness(const FoStructure& m) const {
  // exists x1..xd: all distinct, [exact domain in Pred mode], positive part
  // of the circumscribed predicate, full diagram of the others
  const size_t d = m.domain.size();
  std::vector<std::string> names;
  for (size_t i = 0; i < d; ++i) names.push_back("x" + std::to_string(i + 1));
  auto var_of = [&](int e) {
    for (size_t i = 0; i < d; ++i)
      if (m.domain[i] == e) return names[i];
    throw std::logic_error("element outside domain");
  };

  std::vector<Formula> parts;
  for (size_t i = 0; i < d; ++i)
    for (size_t j = i + 1; j < d; ++j) parts.push_back(lnot(eq(names[i], names[j])));
  if (mode_ == CircMode::Pred) {
    // exact size: forall y. y = x1 | ... | y = xd
    std::vector<Formula> eqs;
    for (const auto& nm : names) eqs.push_back(eq("y", nm));
    parts.push_back(forall("y", disj(eqs)));
  }
  for (size_t pi = 0; pi < sig_.preds().size(); ++pi) {
    bool circumscribed = mode_ == CircMode::Pred && static_cast<int>(pi) == pred_index_;
    for (const auto& t : all_tuples(m.domain, sig_.preds()[pi].arity)) {
      bool holds = m.exts[pi].count(t) > 0;
      std::vector<std::string> args;
      for (int e : t) args.push_back(var_of(e));
      if (holds) parts.push_back(pred(sig_.preds()[pi].name, args));
      else if (!circumscribed) parts.push_back(lnot(pred(sig_.preds()[pi].name, args)));
      // negative facts about the circumscribed predicate are omitted so
      // its extension may grow (P^M ⊆ P^N)
    }
  }

  Formula body = conj(parts);
  for (size_t i = d; i-- > 0;) body = exists(names[i], body);
  return body;
}

bool FinCirc::witness_target(const FoStructure& m, const FoStructure& n) const {
  // exists k isomorphic to m with k ≤ n
  if (mode_ == CircMode::Pred) {
    if (m.domain.size() != n.domain.size()) return false;
    for (const auto& map : bijections(m.domain, n.domain))
      if (pred_leq(apply_map(m, map), n, sig_, pred_)) return true;
    return false;
  }
  // Dom: some induced substructure of n is isomorphic to m
  if (m.domain.size() > n.domain.size()) return false;
  std::vector<int> sub;
  auto rec = [&](auto&& self, size_t start) -> bool {
    if (sub.size() == m.domain.size()) {
      FoStructure restricted;
      restricted.domain = sub;
      restricted.exts.resize(n.exts.size());
      for (size_t i = 0; i < n.exts.size(); ++i)
        for (const auto& t : n.exts[i]) {
          bool inside = true;
          for (int e : t)
            inside = inside && std::binary_search(sub.begin(), sub.end(), e);
          if (inside) restricted.exts[i].insert(t);
        }
      return isomorphic_le(m, restricted, /*exact=*/true);
    }
    for (size_t i = start; i < n.domain.size(); ++i) {
      sub.push_back(n.domain[i]);
      if (self(self, i + 1)) return true;
      sub.pop_back();
    }
    return false;
  };
  return rec(rec, 0);
}

std::string FinCirc::serialize(const FoStructure& m) const {
  std::ostringstream out;
  bool prefix = true;
  for (size_t i = 0; i < m.domain.size(); ++i) prefix &= m.domain[i] == static_cast<int>(i);
  if (prefix) {
    out << "domain=" << m.domain.size();
  } else {
    out << "domain={";
    for (size_t i = 0; i < m.domain.size(); ++i) out << (i ? "," : "") << m.domain[i];
    out << "}";
  }
  for (size_t pi = 0; pi < sig_.preds().size(); ++pi) {
    out << "; " << sig_.preds()[pi].name << "={";
    bool first = true;
    for (const auto& t : m.exts[pi]) {
      out << (first ? "" : ",") << "(";
      for (size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
      out << ")";
      first = false;
    }
    out << "}";
  }
  return out.str();
}

namespace {

void free_vars(const Formula& f, std::vector<std::string>& bound,
               std::vector<std::string>& free) {
  switch (f.op()) {
    case Op::Forall:
    case Op::Exists:
      bound.push_back(f.name());
      free_vars(f.child(0), bound, free);
      bound.pop_back();
      return;
    case Op::Pred:
    case Op::Eq:
      for (const std::string& v : f.vars())
        if (std::find(bound.begin(), bound.end(), v) == bound.end() &&
            std::find(free.begin(), free.end(), v) == free.end())
          free.push_back(v);
      return;
    default:
      for (size_t i = 0; i < f.arity(); ++i) free_vars(f.child(i), bound, free);
      return;
  }
}

}  // namespace

void FinCirc::require_sentence(const Formula& f) const {
  check_well_formed(f, sig_, Lang::FO);
  std::vector<std::string> bound, free;
  free_vars(f, bound, free);
  if (!free.empty())
    throw std::invalid_argument("open formula (free variable " + free[0] + "): " +
                                to_string(f));
}

}  // namespace preflog
