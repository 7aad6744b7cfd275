#include "hypara/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include "hypara/errors.hpp"

namespace hypara {

struct Expression::Node {
  enum class Kind { kConst, kX, kY, kUnary, kBinary, kCall };
  Kind kind = Kind::kConst;
  double value = 0;
  char op = 0;         // unary/binary operator; comparisons use '<', 'l' (<=), '>', 'g' (>=), '=', '!'
  std::string name;    // function name for calls
  std::vector<std::shared_ptr<const Node>> args;

  double eval(double x, double y) const {
    switch (kind) {
      case Kind::kConst: return value;
      case Kind::kX: return x;
      case Kind::kY: return y;
      case Kind::kUnary: return -args[0]->eval(x, y);
      case Kind::kBinary: {
        const double a = args[0]->eval(x, y), b = args[1]->eval(x, y);
        switch (op) {
          case '+': return a + b;
          case '-': return a - b;
          case '*': return a * b;
          case '/': return a / b;
          case '^': return std::pow(a, b);
          case '<': return a < b ? 1.0 : 0.0;
          case 'l': return a <= b ? 1.0 : 0.0;
          case '>': return a > b ? 1.0 : 0.0;
          case 'g': return a >= b ? 1.0 : 0.0;
          case '=': return a == b ? 1.0 : 0.0;
          default: return a != b ? 1.0 : 0.0;
        }
      }
      case Kind::kCall: {
        const double a = args[0]->eval(x, y);
        if (args.size() == 2) {
          const double b = args[1]->eval(x, y);
          if (name == "min") return std::min(a, b);
          if (name == "max") return std::max(a, b);
          return std::pow(a, b);
        }
        if (name == "exp") return std::exp(a);
        if (name == "log") return std::log(a);
        if (name == "sqrt") return std::sqrt(a);
        if (name == "abs") return std::abs(a);
        if (name == "sin") return std::sin(a);
        if (name == "cos") return std::cos(a);
        if (name == "tan") return std::tan(a);
        if (name == "tanh") return std::tanh(a);
        return std::floor(a);
      }
    }
    return 0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

int arity(std::string_view name) {
  for (auto f : {"exp", "log", "sqrt", "abs", "sin", "cos", "tan", "tanh", "floor"}) {
    if (name == f) return 1;
  }
  for (auto f : {"min", "max", "pow"}) {
    if (name == f) return 2;
  }
  return 0;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse_all() {
    NodePtr n = comparison();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError("expression '" + std::string(s_) + "' at column " +
                      std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  static NodePtr binary(char op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::kBinary;
    n->op = op;
    n->args = {std::move(a), std::move(b)};
    return n;
  }

  NodePtr comparison() {
    NodePtr lhs = sum();
    char op = 0;
    if (eat("<=")) op = 'l';
    else if (eat(">=")) op = 'g';
    else if (eat("==")) op = '=';
    else if (eat("!=")) op = '!';
    else if (eat("<")) op = '<';
    else if (eat(">")) op = '>';
    if (op == 0) return lhs;
    return binary(op, lhs, sum());
  }

  NodePtr sum() {
    NodePtr lhs = product();
    for (;;) {
      if (eat("+")) lhs = binary('+', lhs, product());
      else if (eat("-")) lhs = binary('-', lhs, product());
      else return lhs;
    }
  }

  NodePtr product() {
    NodePtr lhs = unary();
    for (;;) {
      if (eat("*")) lhs = binary('*', lhs, unary());
      else if (eat("/")) lhs = binary('/', lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (eat("-")) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::kUnary;
      n->args = {unary()};
      return n;
    }
    if (eat("+")) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (eat("^")) return binary('^', base, unary());
    return base;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = comparison();
      if (!eat(")")) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0;
      const char* first = s_.data() + pos_;
      const auto [ptr, ec] = std::from_chars(first, s_.data() + s_.size(), v);
      if (ec != std::errc()) fail("bad number");
      pos_ += static_cast<std::size_t>(ptr - first);
      auto n = std::make_shared<Node>();
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(s_.substr(start, pos_ - start));
      auto n = std::make_shared<Node>();
      if (name == "x") { n->kind = Node::Kind::kX; return n; }
      if (name == "y") { n->kind = Node::Kind::kY; return n; }
      if (name == "pi") { n->value = std::numbers::pi; return n; }
      const int want = arity(name);
      if (want == 0) fail("unknown name '" + name + "'");
      if (!eat("(")) fail("expected '(' after " + name);
      n->kind = Node::Kind::kCall;
      n->name = name;
      n->args.push_back(comparison());
      while (eat(",")) n->args.push_back(comparison());
      if (!eat(")")) fail("expected ')' closing " + name);
      if (static_cast<int>(n->args.size()) != want) {
        fail(name + " takes " + std::to_string(want) + " argument(s)");
      }
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.root_ = Parser(text).parse_all();
  e.text_ = std::string(text);
  return e;
}

double Expression::operator()(double x, double y) const { return root_->eval(x, y); }

}  // namespace hypara
