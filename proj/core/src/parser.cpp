#include <cctype>
#include <limits>
#include <string>

#include "nambu/errors.hpp"
#include "nambu/expr.hpp"

namespace nambu {
namespace {

enum class TokenKind { kNumber, kIdent, kPlus, kMinus, kStar, kSlash, kCaret, kLParen, kRParen, kEnd };

struct Token {
  TokenKind kind;
  std::string_view text;
  std::size_t position;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) {
      current_ = {TokenKind::kEnd, {}, pos_};
      return;
    }
    const std::size_t start = pos_;
    const char c = text_[pos_];
    auto single = [&](TokenKind kind) {
      ++pos_;
      current_ = {kind, text_.substr(start, 1), start};
    };
    switch (c) {
      case '+': return single(TokenKind::kPlus);
      case '-': return single(TokenKind::kMinus);
      case '*': return single(TokenKind::kStar);
      case '/': return single(TokenKind::kSlash);
      case '^': return single(TokenKind::kCaret);
      case '(': return single(TokenKind::kLParen);
      case ')': return single(TokenKind::kRParen);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number(start);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      current_ = {TokenKind::kIdent, text_.substr(start, pos_ - start), start};
      return;
    }
    throw SyntaxError(start, std::string("unexpected character '") + c + "'");
  }

  void lex_number(std::size_t start) {
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t count = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) throw SyntaxError(start, "malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;
    }
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      throw SyntaxError(pos_, "implicit multiplication is not allowed; use '*'");
    }
    current_ = {TokenKind::kNumber, text_.substr(start, pos_ - start), start};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_{TokenKind::kEnd, {}, 0};
};

class Parser {
 public:
  Parser(std::string_view text, const NameTable& names) : lexer_(text), names_(names) {}

  Expr parse_all() {
    if (lexer_.peek().kind == TokenKind::kEnd) throw SyntaxError(0, "empty expression");
    Expr e = parse_expr();
    const Token& t = lexer_.peek();
    if (t.kind != TokenKind::kEnd) {
      throw SyntaxError(t.position, "unexpected '" + std::string(t.text) + "'");
    }
    return e;
  }

 private:
  Expr parse_expr() {
    Expr lhs = parse_term();
    while (true) {
      TokenKind k = lexer_.peek().kind;
      if (k != TokenKind::kPlus && k != TokenKind::kMinus) return lhs;
      lexer_.take();
      Expr rhs = parse_term();
      lhs = k == TokenKind::kPlus ? Expr::add(lhs, rhs) : Expr::sub(lhs, rhs);
    }
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    while (true) {
      TokenKind k = lexer_.peek().kind;
      if (k != TokenKind::kStar && k != TokenKind::kSlash) return lhs;
      const std::size_t position = lexer_.take().position;
      Expr rhs = parse_factor();
      if (k == TokenKind::kStar) {
        lhs = Expr::mul(lhs, rhs);
      } else {
        if (rhs.is_constant(0)) throw SyntaxError(position, "division by the literal 0");
        lhs = Expr::div(lhs, rhs);
      }
    }
  }

  Expr parse_factor() {
    bool negate = false;
    if (lexer_.peek().kind == TokenKind::kMinus) {
      lexer_.take();
      negate = true;
    }
    Expr base = parse_atom();
    if (lexer_.peek().kind == TokenKind::kCaret) {
      lexer_.take();
      Token t = lexer_.take();
      if (t.kind != TokenKind::kNumber || t.text.find_first_not_of("0123456789") != std::string_view::npos) {
        throw SyntaxError(t.position, "exponent must be a non-negative integer literal");
      }
      unsigned long exponent = 0;
      try {
        exponent = std::stoul(std::string(t.text));
      } catch (const std::out_of_range&) {
        exponent = std::numeric_limits<unsigned long>::max();
      }
      if (exponent > 1000) throw SyntaxError(t.position, "exponent too large");
      base = Expr::pow(base, static_cast<unsigned>(exponent));
    }
    return negate ? Expr::neg(base) : base;
  }

  Expr parse_atom() {
    Token t = lexer_.take();
    switch (t.kind) {
      case TokenKind::kNumber: {
        auto value = parse_rational(t.text);
        if (!value) throw SyntaxError(t.position, "malformed number");
        return Expr::constant(*value);
      }
      case TokenKind::kIdent: {
        std::string name(t.text);
        if (lexer_.peek().kind == TokenKind::kLParen) {
          auto f = function_from_name(name);
          if (!f) throw SyntaxError(t.position, "unknown function '" + name + "'");
          lexer_.take();
          Expr argument = parse_expr();
          expect_rparen();
          return Expr::apply(*f, argument);
        }
        if (names_.is_variable(name)) return Expr::variable(name);
        if (names_.is_parameter(name)) return Expr::parameter(name);
        throw UndeclaredName(name);
      }
      case TokenKind::kLParen: {
        Expr inner = parse_expr();
        expect_rparen();
        return inner;
      }
      case TokenKind::kEnd: throw SyntaxError(t.position, "unexpected end of input");
      default: throw SyntaxError(t.position, "unexpected '" + std::string(t.text) + "'");
    }
  }

  void expect_rparen() {
    Token t = lexer_.take();
    if (t.kind != TokenKind::kRParen) {
      throw SyntaxError(t.position, t.kind == TokenKind::kEnd ? "missing ')'"
                                                              : "expected ')'");
    }
  }

  Lexer lexer_;
  const NameTable& names_;
};

}  // namespace

Expr parse(std::string_view text, const NameTable& names) {
  return Parser(text, names).parse_all();
}

Expr parse(std::string_view text, const std::set<std::string>& declared_names) {
  NameTable names;
  names.variables.assign(declared_names.begin(), declared_names.end());
  return parse(text, names);
}

}  // namespace nambu
