#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace blockmonte {

/// A real function of one variable `x`, parsed from text such as
/// "x^2*sin(x) + cbrt(x)".
///
/// Grammar: + - * / ^ (right associative, binds tighter than unary minus),
/// parentheses, numbers, the constants pi and e, and the functions sin cos
/// tan asin acos atan sinh cosh tanh exp log ln sqrt cbrt abs floor ceil.
/// Parse failures throw ConfigError for field "function".
class Expression {
 public:
  static Expression parse(std::string_view text);

  double operator()(double x) const;

  const std::string& text() const noexcept { return text_; }

  struct Node;

 private:
  Expression(std::string text, std::shared_ptr<const Node> root)
      : text_(std::move(text)), root_(std::move(root)) {}

  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace blockmonte
