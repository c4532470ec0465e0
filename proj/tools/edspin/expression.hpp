#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>

#include "edspin/common/vec3.hpp"

namespace edspin::cli {

class ExpressionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arithmetic expression over the coordinates x, y, z, the constant pi and user constants.
// Grammar: + - * / ^ (right associative), unary minus, parentheses, numbers with exponents,
// and the functions sin cos tan sinh cosh tanh asin acos atan atan2 exp log sqrt abs pow
// min max.
class Expression {
 public:
  Expression(const std::string& source, const std::map<std::string, double>& constants);
  ~Expression();
  Expression(Expression&&) noexcept;
  Expression& operator=(Expression&&) noexcept;

  double operator()(const Vec3& r) const;
  const std::string& source() const { return source_; }

  struct Node;

 private:
  std::string source_;
  std::unique_ptr<Node> root_;
};

}  // namespace edspin::cli
