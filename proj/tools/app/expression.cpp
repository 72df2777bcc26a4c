#include "expression.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "fracbvp/errors.hpp"

namespace fracbvp::cli {

namespace {

using Op = Expression::Op;
using Instr = Expression::Instr;

class Parser {
public:
  Parser(std::string_view text, const std::vector<std::string>& vars, std::vector<Instr>& out)
      : text_(text), vars_(vars), out_(out) {}

  void parse() {
    expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("expression \"" + std::string(text_) + "\": " + what + " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  void expr() {
    term();
    for (;;) {
      if (accept('+')) {
        term();
        out_.push_back({Op::add});
      } else if (accept('-')) {
        term();
        out_.push_back({Op::sub});
      } else {
        return;
      }
    }
  }

  void term() {
    unary();
    for (;;) {
      if (accept('*')) {
        unary();
        out_.push_back({Op::mul});
      } else if (accept('/')) {
        unary();
        out_.push_back({Op::div});
      } else {
        return;
      }
    }
  }

  void unary() {
    if (accept('-')) {
      unary();
      out_.push_back({Op::neg});
    } else if (accept('+')) {
      unary();
    } else {
      power();
    }
  }

  // -a^b is -(a^b); a^-b is allowed.
  void power() {
    primary();
    if (accept('^')) {
      unary();
      out_.push_back({Op::pow});
    }
  }

  void primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char c = text_[pos_];
    if (accept('(')) {
      expr();
      expect(')');
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      name();
      return;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  void number() {
    double value = 0.0;
    const char* begin = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), value);
    if (ec != std::errc()) fail("bad number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    out_.push_back({Op::number, value});
  }

  void name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    const std::string id(text_.substr(start, pos_ - start));
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == id) {
        out_.push_back({Op::variable, 0.0, i});
        return;
      }
    if (id == "pi") return out_.push_back({Op::number, std::numbers::pi});
    if (id == "e") return out_.push_back({Op::number, std::numbers::e});
    if (id == "pow") {
      expect('(');
      expr();
      expect(',');
      expr();
      expect(')');
      return out_.push_back({Op::pow});
    }
    static constexpr std::pair<std::string_view, Op> unary_fns[] = {
        {"sin", Op::sin}, {"cos", Op::cos}, {"tan", Op::tan},
        {"exp", Op::exp}, {"abs", Op::abs}, {"sqrt", Op::sqrt}};
    for (const auto& [fn, op] : unary_fns)
      if (id == fn) {
        expect('(');
        expr();
        expect(')');
        return out_.push_back({op});
      }
    pos_ = start;
    fail("unknown name '" + id + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::vector<Instr>& out_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(std::string_view text, std::vector<std::string> variables) : text_(text) {
  Parser(text_, variables, program_).parse();
  std::size_t depth = 0;
  for (const auto& ins : program_) {
    switch (ins.op) {
      case Op::number:
      case Op::variable: ++depth; break;
      case Op::add: case Op::sub: case Op::mul: case Op::div: case Op::pow: --depth; break;
      default: break;
    }
    max_depth_ = std::max(max_depth_, depth);
  }
}

double Expression::operator()(std::span<const double> values) const {
  // Expressions are short; a fixed buffer covers all but pathological nesting.
  double small[32] = {};
  std::vector<double> big;
  double* stack = small;
  if (max_depth_ > 32) {
    big.resize(max_depth_);
    stack = big.data();
  }
  std::size_t top = 0;
  for (const auto& ins : program_) {
    switch (ins.op) {
      case Op::number: stack[top++] = ins.value; break;
      case Op::variable: stack[top++] = values[ins.index]; break;
      case Op::add: --top; stack[top - 1] += stack[top]; break;
      case Op::sub: --top; stack[top - 1] -= stack[top]; break;
      case Op::mul: --top; stack[top - 1] *= stack[top]; break;
      case Op::div: --top; stack[top - 1] /= stack[top]; break;
      case Op::pow: --top; stack[top - 1] = std::pow(stack[top - 1], stack[top]); break;
      case Op::neg: stack[top - 1] = -stack[top - 1]; break;
      case Op::sin: stack[top - 1] = std::sin(stack[top - 1]); break;
      case Op::cos: stack[top - 1] = std::cos(stack[top - 1]); break;
      case Op::tan: stack[top - 1] = std::tan(stack[top - 1]); break;
      case Op::exp: stack[top - 1] = std::exp(stack[top - 1]); break;
      case Op::abs: stack[top - 1] = std::abs(stack[top - 1]); break;
      case Op::sqrt: stack[top - 1] = std::sqrt(stack[top - 1]); break;
    }
  }
  return stack[0];
}

double evaluate_constant(std::string_view text) {
  const Expression expr(text, {});
  return expr({});
}

}  // namespace fracbvp::cli
