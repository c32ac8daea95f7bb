#include "preflog/formula.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

namespace preflog {

namespace {

size_t combine(size_t h, size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

size_t node_hash(const detail::Node& n) {
  size_t h = static_cast<size_t>(n.op) * 0x100000001b3ull;
  h = combine(h, std::hash<std::string>{}(n.name));
  for (const auto& v : n.vars) h = combine(h, std::hash<std::string>{}(v));
  for (const auto& k : n.kids) h = combine(h, k.hash());
  return h;
}

const std::shared_ptr<const detail::Node>& top_node() {
  static const std::shared_ptr<const detail::Node> n = [] {
    auto p = std::make_shared<detail::Node>();
    p->op = Op::Top;
    p->hash = node_hash(*p);
    return p;
  }();
  return n;
}

}  // namespace

Formula::Formula() : node_(top_node()) {}

Formula Formula::make(Op op, std::vector<Formula> kids, std::string name,
                      std::vector<std::string> vars) {
  auto n = std::make_shared<detail::Node>();
  n->op = op;
  n->name = std::move(name);
  n->vars = std::move(vars);
  n->kids = std::move(kids);
  n->hash = node_hash(*n);
  return Formula(std::move(n));
}

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  return compare(*this, o) == 0;
}

int Formula::compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  if (a.op() != b.op()) return a.op() < b.op() ? -1 : 1;
  if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
  if (a.vars() != b.vars()) return a.vars() < b.vars() ? -1 : 1;
  if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
  for (size_t i = 0; i < a.arity(); ++i)
    if (int c = compare(a.child(i), b.child(i)); c != 0) return c;
  return 0;
}

size_t Formula::size() const {
  size_t s = 1;
  for (size_t i = 0; i < arity(); ++i) s += child(i).size();
  return s;
}

Formula atom(std::string name) { return Formula::make(Op::Atom, {}, std::move(name)); }
Formula top() { return Formula(); }
Formula bot() { return Formula::make(Op::Bot, {}); }
Formula lnot(Formula f) { return Formula::make(Op::Not, {std::move(f)}); }
Formula land(Formula a, Formula b) { return Formula::make(Op::And, {std::move(a), std::move(b)}); }
Formula lor(Formula a, Formula b) { return Formula::make(Op::Or, {std::move(a), std::move(b)}); }
Formula implies(Formula a, Formula b) { return Formula::make(Op::Implies, {std::move(a), std::move(b)}); }
Formula know(Formula f) { return Formula::make(Op::Know, {std::move(f)}); }
Formula maybe(Formula f) { return Formula::make(Op::Maybe, {std::move(f)}); }
Formula past(Formula f) { return Formula::make(Op::Past, {std::move(f)}); }
Formula future(Formula f) { return Formula::make(Op::Future, {std::move(f)}); }
Formula hist(Formula f) { return Formula::make(Op::Hist, {std::move(f)}); }
Formula glob(Formula f) { return Formula::make(Op::Glob, {std::move(f)}); }
Formula always(Formula f) { return Formula::make(Op::Always, {std::move(f)}); }
Formula forall(std::string var, Formula f) {
  return Formula::make(Op::Forall, {std::move(f)}, std::move(var));
}
Formula exists(std::string var, Formula f) {
  return Formula::make(Op::Exists, {std::move(f)}, std::move(var));
}
Formula pred(std::string name, std::vector<std::string> vars) {
  return Formula::make(Op::Pred, {}, std::move(name), std::move(vars));
}
Formula eq(std::string a, std::string b) {
  return Formula::make(Op::Eq, {}, {}, {std::move(a), std::move(b)});
}

Formula conj(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula acc = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) acc = land(acc, fs[i]);
  return acc;
}

Formula disj(const std::vector<Formula>& fs) {
  if (fs.empty()) return bot();
  Formula acc = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) acc = lor(acc, fs[i]);
  return acc;
}

Signature Signature::propositional(std::vector<std::string> atoms) {
  if (atoms.empty())
    throw std::invalid_argument("propositional signature needs at least one atom");
  for (const auto& a : atoms) {
    if (a.empty() || a[0] < 'a' || a[0] > 'z')
      throw std::invalid_argument("atom names must be lowercase: " + a);
    if (std::count(atoms.begin(), atoms.end(), a) != 1)
      throw std::invalid_argument("duplicate atom: " + a);
  }
  Signature s;
  s.atoms_ = std::move(atoms);
  return s;
}

Signature Signature::first_order(std::vector<PredDecl> preds) {
  for (const auto& p : preds) {
    if (p.name.empty() || p.name[0] < 'A' || p.name[0] > 'Z')
      throw std::invalid_argument("predicate names must be capitalized: " + p.name);
    if (p.arity < 1)
      throw std::invalid_argument("predicate arity must be positive: " + p.name);
    size_t n = 0;
    for (const auto& q : preds) n += (q.name == p.name);
    if (n != 1) throw std::invalid_argument("duplicate predicate: " + p.name);
  }
  Signature s;
  s.preds_ = std::move(preds);
  return s;
}

int Signature::atom_index(const std::string& name) const {
  for (size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i] == name) return static_cast<int>(i);
  return -1;
}

const PredDecl* Signature::pred_decl(const std::string& name) const {
  for (const auto& p : preds_)
    if (p.name == name) return &p;
  return nullptr;
}

namespace {

void check_rec(const Formula& f, const Signature& sig, Lang lang,
               int epistemic_depth, std::vector<std::string>& bound) {
  switch (f.op()) {
    case Op::Atom:
      if (lang == Lang::FO)
        throw std::invalid_argument("propositional atom in first-order formula: " + f.name());
      if (sig.atom_index(f.name()) < 0)
        throw std::invalid_argument("unknown atom: " + f.name());
      return;
    case Op::Top:
    case Op::Bot:
      return;
    case Op::Know:
    case Op::Maybe:
      if (lang == Lang::FO)
        throw std::invalid_argument("modal operator in first-order formula");
      check_rec(f.child(0), sig, lang, epistemic_depth + 1, bound);
      return;
    case Op::Past:
    case Op::Future:
    case Op::Hist:
    case Op::Glob:
    case Op::Always:
      if (lang != Lang::TEL)
        throw std::invalid_argument("temporal operator outside the TEL language");
      if (epistemic_depth > 0)
        throw std::invalid_argument(
            "temporal operator within the scope of K is not allowed");
      check_rec(f.child(0), sig, lang, epistemic_depth, bound);
      return;
    case Op::Forall:
    case Op::Exists: {
      if (lang != Lang::FO)
        throw std::invalid_argument("quantifier outside the first-order language");
      bound.push_back(f.name());
      check_rec(f.child(0), sig, lang, epistemic_depth, bound);
      bound.pop_back();
      return;
    }
    case Op::Pred: {
      if (lang != Lang::FO)
        throw std::invalid_argument("predicate outside the first-order language");
      const PredDecl* d = sig.pred_decl(f.name());
      if (!d) throw std::invalid_argument("unknown predicate: " + f.name());
      if (static_cast<int>(f.vars().size()) != d->arity)
        throw std::invalid_argument("arity mismatch for " + f.name());
      return;
    }
    case Op::Eq:
      if (lang != Lang::FO)
        throw std::invalid_argument("equality outside the first-order language");
      return;
    default:
      for (size_t i = 0; i < f.arity(); ++i)
        check_rec(f.child(i), sig, lang, epistemic_depth, bound);
      return;
  }
}

}  // namespace

void check_well_formed(const Formula& f, const Signature& sig, Lang lang) {
  std::vector<std::string> bound;
  check_rec(f, sig, lang, 0, bound);
}

Formula normalize(const Formula& f, const Signature& sig) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Pred:
    case Op::Eq:
      return f;
    case Op::Top:
      // T == p | ~p over the first atom; stays literal for FO signatures.
      if (sig.atoms().empty()) return f;
      return normalize(lor(atom(sig.atoms()[0]), lnot(atom(sig.atoms()[0]))), sig);
    case Op::Bot:
      if (sig.atoms().empty()) return f;
      return lnot(normalize(top(), sig));
    case Op::Not:
      return lnot(normalize(f.child(0), sig));
    case Op::And:
      return land(normalize(f.child(0), sig), normalize(f.child(1), sig));
    case Op::Or:
      // a | b == ~(~a & ~b)
      return lnot(land(lnot(normalize(f.child(0), sig)),
                       lnot(normalize(f.child(1), sig))));
    case Op::Implies:
      // a -> b == ~a | b
      return normalize(lor(lnot(f.child(0)), f.child(1)), sig);
    case Op::Know:
      return know(normalize(f.child(0), sig));
    case Op::Maybe:
      // M a == ~K ~a
      return lnot(know(lnot(normalize(f.child(0), sig))));
    case Op::Past:
      return past(normalize(f.child(0), sig));
    case Op::Future:
      return future(normalize(f.child(0), sig));
    case Op::Hist:
      // H a == ~P ~a
      return lnot(past(lnot(normalize(f.child(0), sig))));
    case Op::Glob:
      // G a == ~F ~a
      return lnot(future(lnot(normalize(f.child(0), sig))));
    case Op::Always: {
      // [] a == H a & a & G a
      Formula a = f.child(0);
      return normalize(land(land(hist(a), a), glob(a)), sig);
    }
    case Op::Forall:
      return forall(f.name(), normalize(f.child(0), sig));
    case Op::Exists:
      return exists(f.name(), normalize(f.child(0), sig));
  }
  throw std::logic_error("normalize: unhandled op");
}

namespace {

// Precedence: -> (1) < | (2) < & (3) < unary (4) < leaves (5).
int prec(Op op) {
  switch (op) {
    case Op::Implies: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Not:
    case Op::Know:
    case Op::Maybe:
    case Op::Past:
    case Op::Future:
    case Op::Hist:
    case Op::Glob:
    case Op::Always: return 4;
    case Op::Forall:
    case Op::Exists: return 0;
    default: return 5;
  }
}

void print_rec(const Formula& f, std::ostringstream& out) {
  auto child = [&](const Formula& c, int min_prec) {
    if (prec(c.op()) < min_prec) {
      out << '(';
      print_rec(c, out);
      out << ')';
    } else {
      print_rec(c, out);
    }
  };
  switch (f.op()) {
    case Op::Atom: out << f.name(); return;
    case Op::Top: out << 'T'; return;
    case Op::Bot: out << "_|_"; return;
    case Op::Not: out << '~'; child(f.child(0), 4); return;
    case Op::Know: out << "K "; child(f.child(0), 4); return;
    case Op::Maybe: out << "M "; child(f.child(0), 4); return;
    case Op::Past: out << "P "; child(f.child(0), 4); return;
    case Op::Future: out << "F "; child(f.child(0), 4); return;
    case Op::Hist: out << "H "; child(f.child(0), 4); return;
    case Op::Glob: out << "G "; child(f.child(0), 4); return;
    case Op::Always: out << "[] "; child(f.child(0), 4); return;
    case Op::And:
      child(f.child(0), 3);
      out << " & ";
      child(f.child(1), 4);  // left-assoc: right operand needs higher prec
      return;
    case Op::Or:
      child(f.child(0), 2);
      out << " | ";
      child(f.child(1), 3);
      return;
    case Op::Implies:
      child(f.child(0), 2);  // right-assoc
      out << " -> ";
      child(f.child(1), 1);
      return;
    case Op::Forall:
    case Op::Exists:
      out << (f.op() == Op::Forall ? "forall " : "exists ") << f.name() << ". ";
      print_rec(f.child(0), out);  // maximal scope, never needs parens
      return;
    case Op::Pred: {
      out << f.name() << '(';
      for (size_t i = 0; i < f.vars().size(); ++i) {
        if (i) out << ',';
        out << f.vars()[i];
      }
      out << ')';
      return;
    }
    case Op::Eq:
      out << f.vars()[0] << " = " << f.vars()[1];
      return;
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::ostringstream out;
  print_rec(f, out);
  return out.str();
}

}  // namespace preflog
