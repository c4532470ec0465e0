#include "expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

namespace edspin::cli {

struct Expression::Node {
  enum class Kind { kNumber, kX, kY, kZ, kNeg, kAdd, kSub, kMul, kDiv, kPow, kCall };
  Kind kind = Kind::kNumber;
  double value = 0.0;
  double (*fn1)(double) = nullptr;
  double (*fn2)(double, double) = nullptr;
  std::vector<std::unique_ptr<Node>> args;

  double eval(const Vec3& r) const {
    switch (kind) {
      case Kind::kNumber: return value;
      case Kind::kX: return r.x;
      case Kind::kY: return r.y;
      case Kind::kZ: return r.z;
      case Kind::kNeg: return -args[0]->eval(r);
      case Kind::kAdd: return args[0]->eval(r) + args[1]->eval(r);
      case Kind::kSub: return args[0]->eval(r) - args[1]->eval(r);
      case Kind::kMul: return args[0]->eval(r) * args[1]->eval(r);
      case Kind::kDiv: return args[0]->eval(r) / args[1]->eval(r);
      case Kind::kPow: return std::pow(args[0]->eval(r), args[1]->eval(r));
      case Kind::kCall:
        return fn1 ? fn1(args[0]->eval(r)) : fn2(args[0]->eval(r), args[1]->eval(r));
    }
    return 0.0;
  }
};

namespace {

using Node = Expression::Node;
using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::Kind kind, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_unique<Node>();
  n->kind = kind;
  if (a) n->args.push_back(std::move(a));
  if (b) n->args.push_back(std::move(b));
  return n;
}

struct Unary {
  const char* name;
  double (*fn)(double);
};
struct Binary {
  const char* name;
  double (*fn)(double, double);
};

const Unary kUnary[] = {
    {"sin", [](double a) { return std::sin(a); }},   {"cos", [](double a) { return std::cos(a); }},
    {"tan", [](double a) { return std::tan(a); }},   {"sinh", [](double a) { return std::sinh(a); }},
    {"cosh", [](double a) { return std::cosh(a); }}, {"tanh", [](double a) { return std::tanh(a); }},
    {"asin", [](double a) { return std::asin(a); }}, {"acos", [](double a) { return std::acos(a); }},
    {"atan", [](double a) { return std::atan(a); }}, {"exp", [](double a) { return std::exp(a); }},
    {"log", [](double a) { return std::log(a); }},   {"sqrt", [](double a) { return std::sqrt(a); }},
    {"abs", [](double a) { return std::abs(a); }},
};
const Binary kBinary[] = {
    {"atan2", [](double a, double b) { return std::atan2(a, b); }},
    {"pow", [](double a, double b) { return std::pow(a, b); }},
    {"min", [](double a, double b) { return std::fmin(a, b); }},
    {"max", [](double a, double b) { return std::fmax(a, b); }},
};

class Parser {
 public:
  Parser(const std::string& s, const std::map<std::string, double>& constants)
      : s_(s), constants_(constants) {}

  NodePtr parse() {
    NodePtr n = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ExpressionError(what + " at column " + std::to_string(pos_ + 1) + " of \"" + s_ + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr sum() {
    NodePtr n = product();
    for (;;) {
      if (accept('+')) n = make(Node::Kind::kAdd, std::move(n), product());
      else if (accept('-')) n = make(Node::Kind::kSub, std::move(n), product());
      else return n;
    }
  }
  NodePtr product() {
    NodePtr n = unary();
    for (;;) {
      if (accept('*')) n = make(Node::Kind::kMul, std::move(n), unary());
      else if (accept('/')) n = make(Node::Kind::kDiv, std::move(n), unary());
      else return n;
    }
  }
  NodePtr unary() {
    if (accept('-')) return make(Node::Kind::kNeg, unary());
    if (accept('+')) return unary();
    return power();
  }
  // -x^2 reads as -(x^2); the exponent may carry its own sign.
  NodePtr power() {
    NodePtr base = atom();
    if (accept('^')) return make(Node::Kind::kPow, std::move(base), unary());
    return base;
  }
  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (accept('(')) {
      NodePtr n = sum();
      expect(')');
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      auto n = make(Node::Kind::kNumber);
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (accept('(')) return call(name);
      if (name == "x") return make(Node::Kind::kX);
      if (name == "y") return make(Node::Kind::kY);
      if (name == "z") return make(Node::Kind::kZ);
      auto n = make(Node::Kind::kNumber);
      if (name == "pi") {
        n->value = std::numbers::pi;
      } else if (auto it = constants_.find(name); it != constants_.end()) {
        n->value = it->second;
      } else {
        pos_ = start;
        fail("unknown name '" + name + "'");
      }
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
  NodePtr call(const std::string& name) {
    auto n = make(Node::Kind::kCall);
    for (const auto& u : kUnary) {
      if (name == u.name) {
        n->fn1 = u.fn;
        n->args.push_back(sum());
        expect(')');
        return n;
      }
    }
    for (const auto& b : kBinary) {
      if (name == b.name) {
        n->fn2 = b.fn;
        n->args.push_back(sum());
        expect(',');
        n->args.push_back(sum());
        expect(')');
        return n;
      }
    }
    fail("unknown function '" + name + "'");
  }

  const std::string& s_;
  const std::map<std::string, double>& constants_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(const std::string& source, const std::map<std::string, double>& constants)
    : source_(source), root_(Parser(source_, constants).parse()) {}
Expression::~Expression() = default;
Expression::Expression(Expression&&) noexcept = default;
Expression& Expression::operator=(Expression&&) noexcept = default;

double Expression::operator()(const Vec3& r) const { return root_->eval(r); }

}  // namespace edspin::cli
