#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace hypara {

// A compiled scalar expression in the coordinates x and y, used for initial data
// in config files. Grammar (usual precedence, ^ right-associative):
//   expr    := sum (('<' | '<=' | '>' | '>=' | '==' | '!=') sum)?
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := atom ('^' unary)?
//   atom    := number | x | y | pi | name '(' expr (',' expr)* ')' | '(' expr ')'
// Comparisons evaluate to 1 or 0, so indicators of sets are written as (condition).
// Functions: exp log sqrt abs sin cos tan tanh floor (one argument), min max pow (two).
class Expression {
 public:
  // Throws FormatError with the offending position on malformed input.
  static Expression parse(std::string_view text);

  double operator()(double x, double y) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace hypara
