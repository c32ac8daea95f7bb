#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace preflog {

// Connectives of the three languages sharing one AST. The epistemic
// primitives are Not/And/Know; Or, Implies, Maybe, Top, Bot, Glob, Hist
// and Always are the usual abbreviations and are kept as explicit sugar
// nodes until normalize() is asked for.
enum class Op : uint8_t {
  Atom,     // propositional atom (lowercase)
  Top,      // T
  Bot,      // _|_
  Not,      // ~f
  And,      // f & g
  Or,       // f | g            == ~(~f & ~g)
  Implies,  // f -> g           == ~f | g
  Know,     // K f
  Maybe,    // M f              == ~K ~f
  Past,     // P f   (strictly sometime in the past)
  Future,   // F f   (strictly sometime in the future)
  Hist,     // H f              == ~P ~f
  Glob,     // G f              == ~F ~f
  Always,   // [] f             == H f & f & G f
  Forall,   // forall x. f
  Exists,   // exists x. f
  Pred,     // Name(x, ...)
  Eq,       // x = y
};

class Formula;

namespace detail {
struct Node {
  Op op;
  std::string name;                // Atom/Pred name, Forall/Exists bound var
  std::vector<std::string> vars;   // Pred argument vars; Eq stores both here
  std::vector<Formula> kids;
  size_t hash;
};
}  // namespace detail

// Immutable, value-semantic formula tree. Copies share structure.
class Formula {
 public:
  Formula();  // Top by default; keeps containers usable

  Op op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  const std::vector<std::string>& vars() const { return node_->vars; }
  size_t arity() const { return node_->kids.size(); }
  const Formula& child(size_t i) const { return node_->kids[i]; }
  size_t hash() const { return node_->hash; }

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }
  // Total structural order; gives deterministic formula sets.
  static int compare(const Formula& a, const Formula& b);
  bool operator<(const Formula& o) const { return compare(*this, o) < 0; }

  size_t size() const;  // node count

  static Formula make(Op op, std::vector<Formula> kids, std::string name = {},
                      std::vector<std::string> vars = {});

 private:
  explicit Formula(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::Node> node_;
};

// Builders.
Formula atom(std::string name);
Formula top();
Formula bot();
Formula lnot(Formula f);
Formula land(Formula a, Formula b);
Formula lor(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula know(Formula f);   // K
Formula maybe(Formula f);  // M
Formula past(Formula f);   // P
Formula future(Formula f); // F
Formula hist(Formula f);   // H
Formula glob(Formula f);   // G
Formula always(Formula f); // []
Formula forall(std::string var, Formula f);
Formula exists(std::string var, Formula f);
Formula pred(std::string name, std::vector<std::string> vars);
Formula eq(std::string a, std::string b);

// Left fold of a conjunction/disjunction; empty range yields T / _|_.
Formula conj(const std::vector<Formula>& fs);
Formula disj(const std::vector<Formula>& fs);

struct PredDecl {
  std::string name;
  int arity = 0;
  bool operator==(const PredDecl&) const = default;
};

// A propositional/modal signature is an ordered atom list; a first-order
// signature is a predicate list (equality is built in and not listed).
class Signature {
 public:
  static Signature propositional(std::vector<std::string> atoms);
  static Signature first_order(std::vector<PredDecl> preds);

  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::vector<PredDecl>& preds() const { return preds_; }
  bool is_first_order() const { return !preds_.empty() || atoms_.empty(); }

  int atom_index(const std::string& name) const;           // -1 if unknown
  const PredDecl* pred_decl(const std::string& name) const;  // null if unknown

 private:
  std::vector<std::string> atoms_;
  std::vector<PredDecl> preds_;
};

enum class Lang { S5, TEL, FO };

// Checks f against sig/lang: known atoms/predicates, arities, no temporal
// operator inside K/M scope, language-appropriate connectives only.
// Throws std::invalid_argument on violation.
void check_well_formed(const Formula& f, const Signature& sig, Lang lang);

// Rewrites sugar to the primitive connectives: Or/Implies/Maybe/Glob/Hist/
// Always via their defining abbreviations, Top/Bot via p | ~p over the
// signature's first atom (kept literal for FO signatures, which have no
// atoms). Purely syntactic, no simplification.
Formula normalize(const Formula& f, const Signature& sig);

// Canonical printing; parse(print(f)) == f holds structurally.
std::string to_string(const Formula& f);

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg), pos(pos) {}
  size_t pos;
};

struct BoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Text grammar (see README): atoms [a-z][a-z0-9_]*, `~ & | ->`, constants
// `T` and `_|_`, modal `K M`, temporal `F G P H []`, first-order
// `forall x. f`, `exists x. f`, `Name(x,y)`, `x = y`.
Formula parse(const std::string& text, const Signature& sig, Lang lang);

}  // namespace preflog
