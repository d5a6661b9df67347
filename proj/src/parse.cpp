#include "ringstab/parse.hpp"

#include <cctype>

#include "ringstab/errors.hpp"

namespace ringstab {

namespace {

struct Token {
  enum Kind { Integer, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Kind kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  Lexer(const std::string& src, int line0, int col0)
      : src_(src), line_(line0), col_(col0) {}

  Token next() {
    while (pos_ < src_.size() && advance_ws()) {
    }
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) {
      t.kind = Token::End;
      return t;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        bump();
      t.kind = Token::Integer;
      t.text = src_.substr(start, pos_ - start);
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        bump();
      t.kind = Token::Ident;
      t.text = src_.substr(start, pos_ - start);
      return t;
    }
    switch (c) {
      case '+': t.kind = Token::Plus; break;
      case '-': t.kind = Token::Minus; break;
      case '*': t.kind = Token::Star; break;
      case '/': t.kind = Token::Slash; break;
      case '^': t.kind = Token::Caret; break;
      case '(': t.kind = Token::LParen; break;
      case ')': t.kind = Token::RParen; break;
      default:
        fail(ErrorCode::ParseError,
             position() + ": unexpected character '" + std::string(1, c) + "'");
    }
    bump();
    return t;
  }

  std::string position() const {
    return "line " + std::to_string(line_) + ", col " + std::to_string(col_);
  }

 private:
  bool advance_ws() {
    char c = src_[pos_];
    if (c == '\n') {
      ++line_;
      col_ = 1;
      ++pos_;
      return true;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump();
      return true;
    }
    return false;
  }

  void bump() {
    ++pos_;
    ++col_;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_, col_;
};

class Parser {
 public:
  Parser(const Ring& ring, const std::string& text, int line0, int col0)
      : ring_(ring), lexer_(text, line0, col0) {
    advance();
  }

  FractionElement parse() {
    FractionElement v = expr();
    expect(Token::End, "end of expression");
    return v;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  [[noreturn]] void error_here(const std::string& what) {
    fail(ErrorCode::ParseError, "line " + std::to_string(cur_.line) +
                                   ", col " + std::to_string(cur_.col) + ": " +
                                   what);
  }

  void expect(Token::Kind kind, const std::string& what) {
    if (cur_.kind != kind) error_here("expected " + what);
  }

  FractionElement expr() {
    FractionElement v = term();
    while (cur_.kind == Token::Plus || cur_.kind == Token::Minus) {
      bool plus = cur_.kind == Token::Plus;
      advance();
      FractionElement rhs = term();
      v = plus ? v + rhs : v - rhs;
    }
    return v;
  }

  FractionElement term() {
    FractionElement v = factor();
    while (cur_.kind == Token::Star || cur_.kind == Token::Slash) {
      bool star = cur_.kind == Token::Star;
      Token op = cur_;
      advance();
      FractionElement rhs = factor();
      if (star) {
        v = v * rhs;
      } else {
        if (rhs.is_zero())
          fail(ErrorCode::ParseError,
               "line " + std::to_string(op.line) + ", col " +
                   std::to_string(op.col) + ": division by zero");
        v = v / rhs;
      }
    }
    return v;
  }

  FractionElement factor() {
    if (cur_.kind == Token::Minus) {
      advance();
      return -factor();
    }
    FractionElement base = primary();
    if (cur_.kind == Token::Caret) {
      advance();
      if (cur_.kind != Token::Integer)
        error_here("expected a nonnegative integer exponent");
      unsigned long e = std::stoul(cur_.text);
      advance();
      FractionElement acc = FractionElement::one(ring_);
      for (unsigned long i = 0; i < e; ++i) acc = acc * base;
      return acc;
    }
    return base;
  }

  FractionElement primary() {
    switch (cur_.kind) {
      case Token::Integer: {
        mpz_class v(cur_.text);
        advance();
        return FractionElement::from_ring(RingElement::from_mpz(ring_, v));
      }
      case Token::Ident: {
        std::string name = cur_.text;
        if (ring_->kind == RingKind::QuadraticSqrtMinus5 && name == "s") {
          advance();
          return FractionElement::from_ring(
              RingElement::quadratic(ring_, 0, 1));
        }
        if (ring_->is_polynomial_backed()) {
          for (int i = 0; i < ring_->arity(); ++i) {
            if (ring_->variables[i] == name) {
              advance();
              return FractionElement::from_ring(RingElement::polynomial(
                  ring_, Poly::variable(ring_->arity(), i)));
            }
          }
        }
        error_here("unknown variable '" + name + "' in " + ring_->describe());
      }
      case Token::LParen: {
        advance();
        FractionElement v = expr();
        expect(Token::RParen, "')'");
        advance();
        return v;
      }
      default:
        error_here("expected a value");
    }
  }

  Ring ring_;
  Lexer lexer_;
  Token cur_;
};

}  // namespace

FractionElement parse_fraction(const Ring& ring, const std::string& text,
                               int line0, int col0) {
  return Parser(ring, text, line0, col0).parse();
}

RingElement parse_element(const Ring& ring, const std::string& text,
                          int line0, int col0) {
  FractionElement f = parse_fraction(ring, text, line0, col0);
  if (!fraction_in_ring(f))
    fail(ErrorCode::ParseError,
         "line " + std::to_string(line0) + ": value " + f.to_string() +
             " is not an element of " + ring->describe());
  return fraction_to_ring(f);
}

}  // namespace ringstab
