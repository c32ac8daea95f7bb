#include <cctype>

#include "preflog/formula.hpp"

namespace preflog {

namespace {

enum class Tok {
  End, LParen, RParen, Tilde, Amp, Pipe, Arrow, Eq, Comma, Dot, Box,
  TopC, BotC, KOp, MOp, FOp, GOp, POp, HOp, Forall, Exists, Ident, UIdent,
};

struct Lexer {
  const std::string& src;
  bool fo_mode;  // K M F G P H are ordinary predicate names in FO
  size_t pos = 0;
  Tok tok = Tok::End;
  std::string text;   // Ident/UIdent payload
  size_t tok_pos = 0;

  Lexer(const std::string& s, bool fo) : src(s), fo_mode(fo) { next(); }

  [[noreturn]] void fail(const std::string& msg, size_t at) {
    throw ParseError(msg, at);
  }

  void next() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    tok_pos = pos;
    if (pos >= src.size()) { tok = Tok::End; return; }
    char c = src[pos];
    switch (c) {
      case '(': tok = Tok::LParen; ++pos; return;
      case ')': tok = Tok::RParen; ++pos; return;
      case '~': tok = Tok::Tilde; ++pos; return;
      case '&': tok = Tok::Amp; ++pos; return;
      case '|': tok = Tok::Pipe; ++pos; return;
      case '=': tok = Tok::Eq; ++pos; return;
      case ',': tok = Tok::Comma; ++pos; return;
      case '.': tok = Tok::Dot; ++pos; return;
      case '-':
        if (pos + 1 < src.size() && src[pos + 1] == '>') { tok = Tok::Arrow; pos += 2; return; }
        fail("expected '->'", pos);
      case '[':
        if (pos + 1 < src.size() && src[pos + 1] == ']') { tok = Tok::Box; pos += 2; return; }
        fail("expected '[]'", pos);
      case '_':
        if (src.compare(pos, 3, "_|_") == 0) { tok = Tok::BotC; pos += 3; return; }
        fail("expected '_|_'", pos);
      default: break;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < src.size() &&
             (std::islower(static_cast<unsigned char>(src[pos])) ||
              std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
        ++pos;
      text = src.substr(start, pos - start);
      if (text == "forall") tok = Tok::Forall;
      else if (text == "exists") tok = Tok::Exists;
      else tok = Tok::Ident;
      return;
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
        ++pos;
      text = src.substr(start, pos - start);
      if (text == "T") tok = Tok::TopC;
      else if (fo_mode) tok = Tok::UIdent;
      else if (text == "K") tok = Tok::KOp;
      else if (text == "M") tok = Tok::MOp;
      else if (text == "F") tok = Tok::FOp;
      else if (text == "G") tok = Tok::GOp;
      else if (text == "P") tok = Tok::POp;
      else if (text == "H") tok = Tok::HOp;
      else tok = Tok::UIdent;
      return;
    }
    fail(std::string("unexpected character '") + c + "'", pos);
  }
};

struct Parser {
  Lexer lex;
  const Signature& sig;
  Lang lang;

  Parser(const std::string& s, const Signature& sig, Lang lang)
      : lex(s, lang == Lang::FO), sig(sig), lang(lang) {}

  void expect(Tok t, const char* what) {
    if (lex.tok != t) lex.fail(std::string("expected ") + what, lex.tok_pos);
    lex.next();
  }

  // k_depth > 0 while inside the scope of K or M (Def 8 restriction).
  Formula parse_implies(int k_depth) {
    Formula left = parse_or(k_depth);
    if (lex.tok == Tok::Arrow) {
      lex.next();
      return implies(left, parse_implies(k_depth));  // right-assoc
    }
    return left;
  }

  Formula parse_or(int k_depth) {
    Formula f = parse_and(k_depth);
    while (lex.tok == Tok::Pipe) {
      lex.next();
      f = lor(f, parse_and(k_depth));
    }
    return f;
  }

  Formula parse_and(int k_depth) {
    Formula f = parse_unary(k_depth);
    while (lex.tok == Tok::Amp) {
      lex.next();
      f = land(f, parse_unary(k_depth));
    }
    return f;
  }

  Formula temporal(Tok t, int k_depth, size_t at) {
    if (lang != Lang::TEL) lex.fail("temporal operator outside the TEL language", at);
    if (k_depth > 0)
      lex.fail("temporal operator within the scope of K is not allowed", at);
    lex.next();
    Formula f = parse_unary(k_depth);
    switch (t) {
      case Tok::FOp: return future(f);
      case Tok::GOp: return glob(f);
      case Tok::POp: return past(f);
      case Tok::HOp: return hist(f);
      default: return always(f);
    }
  }

  Formula parse_unary(int k_depth) {
    size_t at = lex.tok_pos;
    switch (lex.tok) {
      case Tok::Tilde:
        lex.next();
        return lnot(parse_unary(k_depth));
      case Tok::KOp:
        if (lang == Lang::FO) lex.fail("modal operator in first-order formula", at);
        lex.next();
        return know(parse_unary(k_depth + 1));
      case Tok::MOp:
        if (lang == Lang::FO) lex.fail("modal operator in first-order formula", at);
        lex.next();
        return maybe(parse_unary(k_depth + 1));
      case Tok::FOp:
      case Tok::GOp:
      case Tok::POp:
      case Tok::HOp:
      case Tok::Box:
        return temporal(lex.tok, k_depth, at);
      case Tok::Forall:
      case Tok::Exists: {
        if (lang != Lang::FO) lex.fail("quantifier outside the first-order language", at);
        bool uni = lex.tok == Tok::Forall;
        lex.next();
        if (lex.tok != Tok::Ident) lex.fail("expected variable after quantifier", lex.tok_pos);
        std::string var = lex.text;
        lex.next();
        expect(Tok::Dot, "'.'");
        Formula body = parse_implies(k_depth);  // maximal scope
        return uni ? forall(var, body) : exists(var, body);
      }
      default:
        return parse_primary(k_depth);
    }
  }

  Formula parse_primary(int k_depth) {
    size_t at = lex.tok_pos;
    switch (lex.tok) {
      case Tok::LParen: {
        lex.next();
        Formula f = parse_implies(k_depth);
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::TopC:
        lex.next();
        return top();
      case Tok::BotC:
        lex.next();
        return bot();
      case Tok::Ident: {
        std::string name = lex.text;
        lex.next();
        if (lang == Lang::FO) {
          // lowercase identifiers are variables here; only `x = y` is a formula
          if (lex.tok != Tok::Eq)
            lex.fail("expected '=' after variable (atoms do not exist in FO)", at);
          lex.next();
          if (lex.tok != Tok::Ident) lex.fail("expected variable after '='", lex.tok_pos);
          std::string rhs = lex.text;
          lex.next();
          return eq(name, rhs);
        }
        if (sig.atom_index(name) < 0) lex.fail("unknown atom: " + name, at);
        return atom(name);
      }
      case Tok::UIdent: {
        if (lang != Lang::FO) lex.fail("predicate outside the first-order language", at);
        std::string name = lex.text;
        const PredDecl* d = sig.pred_decl(name);
        if (!d) lex.fail("unknown predicate: " + name, at);
        lex.next();
        expect(Tok::LParen, "'('");
        std::vector<std::string> args;
        while (true) {
          if (lex.tok != Tok::Ident) lex.fail("expected variable", lex.tok_pos);
          args.push_back(lex.text);
          lex.next();
          if (lex.tok == Tok::Comma) { lex.next(); continue; }
          break;
        }
        expect(Tok::RParen, "')'");
        if (static_cast<int>(args.size()) != d->arity)
          lex.fail("arity mismatch for " + name, at);
        return pred(name, std::move(args));
      }
      default:
        lex.fail("expected a formula", at);
    }
  }
};

}  // namespace

Formula parse(const std::string& text, const Signature& sig, Lang lang) {
  Parser p(text, sig, lang);
  Formula f = p.parse_implies(0);
  if (p.lex.tok != Tok::End) p.lex.fail("trailing input", p.lex.tok_pos);
  return f;
}

}  // namespace preflog
