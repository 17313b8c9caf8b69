#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "qoag/formula.hpp"

namespace qoag {

namespace parse_detail {

enum class Tok { ident, number, plus, minus, star, lparen, rparen, dot, bang, amp, bar, arrow, le, lt, tilde, eq, ne, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    std::size_t p = i_;
    if (i_ >= s_.size()) return {Tok::end, "", p};
    char c = s_[i_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      return {Tok::ident, std::string(s_.substr(p, i_ - p)), p};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return {Tok::number, std::string(s_.substr(p, i_ - p)), p};
    }
    auto two = [&](const char* t) { return s_.substr(i_, 2) == t; };
    if (two("->")) return i_ += 2, Token{Tok::arrow, "->", p};
    if (two("<~")) return i_ += 2, Token{Tok::le, "<~", p};
    if (two("<<")) return i_ += 2, Token{Tok::lt, "<<", p};
    if (two("!=")) return i_ += 2, Token{Tok::ne, "!=", p};
    ++i_;
    switch (c) {
      case '+': return {Tok::plus, "+", p};
      case '-': return {Tok::minus, "-", p};
      case '*': return {Tok::star, "*", p};
      case '(': return {Tok::lparen, "(", p};
      case ')': return {Tok::rparen, ")", p};
      case '.': return {Tok::dot, ".", p};
      case '!': return {Tok::bang, "!", p};
      case '&': return {Tok::amp, "&", p};
      case '|': return {Tok::bar, "|", p};
      case '~': return {Tok::tilde, "~", p};
      case '=': return {Tok::eq, "=", p};
    }
    throw SyntaxError(p, "unexpected character '" + std::string(1, c) + "'");
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

inline bool is_keyword(const std::string& s) {
  return s == "EX" || s == "ALL" || s == "true" || s == "false" || s == "in" || s == "Go";
}

class Parser {
 public:
  explicit Parser(std::string_view s) : lex_(s) {
    for (;;) {
      toks_.push_back(lex_.next());
      if (toks_.back().kind == Tok::end) break;
    }
  }

  Formula parse_all() {
    Formula f = implication();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
    return f;
  }

  Term parse_term_all() {
    Term t = term();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
    return t;
  }

 private:
  Lexer lex_;
  std::vector<Token> toks_;
  std::size_t k_ = 0;

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(k_ + ahead, toks_.size() - 1)]; }
  Token take() { return toks_[std::min(k_++, toks_.size() - 1)]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(peek().pos, msg.empty() ? "unexpected end of input" : msg);
  }
  void expect(Tok t, const char* what) {
    if (peek().kind != t) fail(std::string("expected ") + what + (peek().kind == Tok::end ? " at end of input" : ", got '" + peek().text + "'"));
    take();
  }
  bool at_ident(const char* s) const { return peek().kind == Tok::ident && peek().text == s; }

  Formula implication() {
    Formula l = disjunction();
    if (peek().kind == Tok::arrow) {
      take();
      Formula r = implication();
      return f_or({f_not(l), r});
    }
    return l;
  }

  Formula disjunction() {
    std::vector<Formula> k{conjunction()};
    while (peek().kind == Tok::bar) {
      take();
      k.push_back(conjunction());
    }
    return f_or(std::move(k));
  }

  Formula conjunction() {
    std::vector<Formula> k{unary()};
    while (peek().kind == Tok::amp) {
      take();
      k.push_back(unary());
    }
    return f_and(std::move(k));
  }

  Formula unary() {
    if (peek().kind == Tok::bang) {
      take();
      return f_not(unary());
    }
    if (at_ident("EX") || at_ident("ALL")) {
      bool ex = take().text == "EX";
      if (peek().kind != Tok::ident || is_keyword(peek().text)) fail("expected a variable after quantifier");
      std::string v = take().text;
      expect(Tok::dot, "'.'");
      Formula body = implication();
      return ex ? f_exists(v, body) : f_forall(v, body);
    }
    if (at_ident("true")) return take(), f_true();
    if (at_ident("false")) return take(), f_false();
    if (peek().kind == Tok::lparen) {
      take();
      Formula f = implication();
      expect(Tok::rparen, "')'");
      return f;
    }
    return atom();
  }

  Formula atom() {
    Term l = term();
    Token op = peek();
    if (op.kind == Tok::ident && op.text == "in") {
      take();
      if (!at_ident("Go")) fail("expected 'Go' after 'in'");
      take();
      return f_in_go(l);
    }
    switch (op.kind) {
      case Tok::le: take(); return f_le(l, term());
      case Tok::lt: take(); return f_lt(l, term());
      case Tok::tilde: take(); return f_equiv(l, term());
      case Tok::eq: take(); return f_eq(l, term());
      case Tok::ne: take(); return f_not(f_eq(l, term()));
      default: fail(op.kind == Tok::end ? "expected a relation at end of input" : "expected a relation, got '" + op.text + "'");
    }
  }

  Term term() {
    Term t;
    bool neg = false;
    if (peek().kind == Tok::minus) {
      take();
      neg = true;
    } else if (peek().kind == Tok::plus) {
      take();
    }
    t = mono(neg);
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      neg = take().kind == Tok::minus;
      t = t + mono(neg);
    }
    return t;
  }

  Term mono(bool neg) {
    if (peek().kind == Tok::number) {
      Token n = take();
      long long c;
      try {
        c = std::stoll(n.text);
      } catch (const std::exception&) {
        throw SyntaxError(n.pos, "coefficient out of range");
      }
      if (peek().kind == Tok::star) take();
      if (peek().kind == Tok::ident && !is_keyword(peek().text)) {
        return Term::var(take().text, neg ? -c : c);
      }
      if (c == 0) return Term();
      throw SyntaxError(n.pos, "integer constants other than 0 are not terms; write a coefficient before a variable");
    }
    if (peek().kind == Tok::ident && !is_keyword(peek().text)) return Term::var(take().text, neg ? -1 : 1);
    fail(peek().kind == Tok::end ? "expected a term at end of input" : "expected a term, got '" + peek().text + "'");
  }
};

}  // namespace parse_detail

inline Formula parse_formula(std::string_view src) { return parse_detail::Parser(src).parse_all(); }
inline Term parse_term(std::string_view src) { return parse_detail::Parser(src).parse_term_all(); }

}  // namespace qoag
