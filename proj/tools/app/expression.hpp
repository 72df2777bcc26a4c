#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fracbvp::cli {

/// Arithmetic expression over named variables, compiled once to a postfix program.
/// Grammar: + - * / ^ (right associative), unary minus, parentheses, numbers,
/// the constants pi and e, and the functions sin, cos, tan, exp, abs, sqrt and
/// pow(a, b). Throws ConfigError on a syntax error or unknown name.
class Expression {
public:
  Expression(std::string_view text, std::vector<std::string> variables);

  /// `values` lines up with the variable list passed to the constructor.
  double operator()(std::span<const double> values) const;
  const std::string& text() const noexcept { return text_; }

  enum class Op { number, variable, add, sub, mul, div, pow, neg, sin, cos, tan, exp, abs, sqrt };
  struct Instr {
    Op op;
    double value = 0.0;
    std::size_t index = 0;
  };

private:
  std::string text_;
  std::vector<Instr> program_;
  std::size_t max_depth_ = 0;
};

/// Evaluates an expression without variables, e.g. "1/3" or "pi/4".
double evaluate_constant(std::string_view text);

}  // namespace fracbvp::cli
