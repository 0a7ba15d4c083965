#include "flatlab/expr/parser.hpp"

#include <cctype>
#include <string>

#include "flatlab/error.hpp"

namespace flatlab::expr {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VarSetPtr& vars) : text_(text), vars_(vars) {}

  RationalExpr run() {
    RationalExpr e = expr();
    skip_ws();
    if (pos_ < text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return e;
  }

 private:
  std::string_view text_;
  const VarSetPtr& vars_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalExpr expr() {
    RationalExpr acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  RationalExpr term() {
    RationalExpr acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (accept('/')) {
        skip_ws();
        std::size_t at = pos_;
        RationalExpr d = factor();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  RationalExpr factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    RationalExpr b = base();
    if (accept('^')) {
      skip_ws();
      std::size_t at = pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError("expected non-negative integer exponent", at);
      BigInt e{std::string(integer_token())};
      if (e > 4096) throw ParseError("exponent too large", at);
      b = b.pow(static_cast<int>(e.get_si()));
      if (accept('^')) throw ParseError("chained exponent needs parentheses", pos_ - 1);
    }
    return b;
  }

  std::string_view integer_token() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  RationalExpr base() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RationalExpr e = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t at = pos_;
      auto tok = integer_token();
      if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        throw ParseError("malformed number", at);
      return RationalExpr(BigRational(BigInt(std::string(tok))), vars_);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      if (!vars_) throw ParseError("unknown identifier '" + std::string(name) + "'", start);
      auto id = vars_->find(name);
      if (!id) throw ParseError("unknown identifier '" + std::string(name) + "'", start);
      return RationalExpr::variable(vars_, *id);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }
};

}  // namespace

RationalExpr parse(std::string_view text, const VarSetPtr& vars) {
  return Parser(text, vars).run();
}

}  // namespace flatlab::expr
