#include "blockmonte/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <variant>
#include <vector>

#include "blockmonte/errors.hpp"

namespace blockmonte {

using Func = double (*)(double);

struct Expression::Node {
  struct Constant { double value; };
  struct Variable {};
  struct Call { Func fn; std::shared_ptr<const Node> arg; };
  struct Negate { std::shared_ptr<const Node> arg; };
  struct Binary { char op; std::shared_ptr<const Node> lhs, rhs; };

  std::variant<Constant, Variable, Call, Negate, Binary> value;

  double eval(double x) const {
    return std::visit(
        [x](const auto& n) -> double {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Constant>) {
            return n.value;
          } else if constexpr (std::is_same_v<T, Variable>) {
            return x;
          } else if constexpr (std::is_same_v<T, Call>) {
            return n.fn(n.arg->eval(x));
          } else if constexpr (std::is_same_v<T, Negate>) {
            return -n.arg->eval(x);
          } else {
            const double a = n.lhs->eval(x);
            const double b = n.rhs->eval(x);
            switch (n.op) {
              case '+': return a + b;
              case '-': return a - b;
              case '*': return a * b;
              case '/': return a / b;
              default: return std::pow(a, b);
            }
          }
        },
        value);
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

struct NamedFunc {
  const char* name;
  Func fn;
};

const NamedFunc kFunctions[] = {
    {"sin", [](double v) { return std::sin(v); }},   {"cos", [](double v) { return std::cos(v); }},
    {"tan", [](double v) { return std::tan(v); }},   {"asin", [](double v) { return std::asin(v); }},
    {"acos", [](double v) { return std::acos(v); }}, {"atan", [](double v) { return std::atan(v); }},
    {"sinh", [](double v) { return std::sinh(v); }}, {"cosh", [](double v) { return std::cosh(v); }},
    {"tanh", [](double v) { return std::tanh(v); }}, {"exp", [](double v) { return std::exp(v); }},
    {"log", [](double v) { return std::log(v); }},   {"ln", [](double v) { return std::log(v); }},
    {"sqrt", [](double v) { return std::sqrt(v); }}, {"cbrt", [](double v) { return std::cbrt(v); }},
    {"abs", [](double v) { return std::fabs(v); }},  {"floor", [](double v) { return std::floor(v); }},
    {"ceil", [](double v) { return std::ceil(v); }},
};

NodePtr make(auto node) { return std::make_shared<const Expression::Node>(Expression::Node{node}); }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("function", what + " at offset " + std::to_string(pos_) + " in \"" +
                                      std::string(text_) + "\"");
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

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Expression::Node::Binary{'+', lhs, term()});
      } else if (accept('-')) {
        lhs = make(Expression::Node::Binary{'-', lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Expression::Node::Binary{'*', lhs, unary()});
      } else if (accept('/')) {
        lhs = make(Expression::Node::Binary{'/', lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Expression::Node::Negate{unary()});
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Expression::Node::Binary{'^', base, unary()});
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      NodePtr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("bad number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return make(Expression::Node::Constant{v});
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") return make(Expression::Node::Variable{});
    if (name == "pi") return make(Expression::Node::Constant{std::numbers::pi});
    if (name == "e") return make(Expression::Node::Constant{std::numbers::e});
    for (const auto& f : kFunctions) {
      if (name == f.name) {
        if (!accept('(')) fail("expected '(' after " + std::string(name));
        NodePtr arg = expr();
        if (!accept(')')) fail("expected ')'");
        return make(Expression::Node::Call{f.fn, arg});
      }
    }
    pos_ = start;
    fail("unknown name '" + std::string(name) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view text) {
  return Expression(std::string(text), Parser(text).parse());
}

double Expression::operator()(double x) const { return root_->eval(x); }

}  // namespace blockmonte
