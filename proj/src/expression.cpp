#include "umb/expression.hpp"

#include <cctype>
#include <numbers>

#include "umb/error.hpp"

namespace umb {

class ExpressionParser {
 public:
  ExpressionParser(const std::string& text, const std::map<std::string, int>& vars, Expression& out)
      : text_(text), vars_(vars), out_(out) {}

  int parse() {
    const int root = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return root;
  }

 private:
  using Op = Expression::Op;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, what + " at offset " + std::to_string(pos_), text_);
  }

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

  int add(Expression::Node n) {
    if (n.op == Op::Number) n.constant = true;
    else if (n.op != Op::Var) {
      n.constant = out_.nodes_[n.lhs].constant && (n.rhs < 0 || out_.nodes_[n.rhs].constant);
    }
    out_.nodes_.push_back(n);
    return static_cast<int>(out_.nodes_.size()) - 1;
  }

  int binary(Op op, int l, int r) { return add({op, 0.0, -1, l, r}); }

  int expr() {
    int lhs = term();
    for (;;) {
      if (accept('+')) lhs = binary(Op::Add, lhs, term());
      else if (accept('-')) lhs = binary(Op::Sub, lhs, term());
      else return lhs;
    }
  }

  int term() {
    int lhs = unary();
    for (;;) {
      if (accept('*')) lhs = binary(Op::Mul, lhs, unary());
      else if (accept('/')) lhs = binary(Op::Div, lhs, unary());
      else return lhs;
    }
  }

  int unary() {
    if (accept('-')) return add({Op::Neg, 0.0, -1, unary(), -1});
    if (accept('+')) return unary();
    return power();
  }

  int power() {
    const int base = primary();
    if (accept('^')) return binary(Op::Pow, base, unary());  // right-associative
    return base;
  }

  int primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      const int inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name = text_.substr(start, pos_ - start);
      static const std::map<std::string, Op> functions = {
          {"sin", Op::Sin}, {"cos", Op::Cos}, {"exp", Op::Exp}, {"sqrt", Op::Sqrt}};
      if (auto f = functions.find(name); f != functions.end()) {
        if (!accept('(')) fail("expected '(' after " + name);
        const int arg = expr();
        if (!accept(')')) fail("expected ')'");
        return add({f->second, 0.0, -1, arg, -1});
      }
      if (name == "pi") return add({Op::Number, std::numbers::pi, -1, -1, -1});
      auto v = vars_.find(name);
      if (v == vars_.end()) {
        pos_ = start;
        fail("unknown identifier '" + name + "'");
      }
      out_.max_var_ = std::max(out_.max_var_, v->second);
      return add({Op::Var, 0.0, v->second, -1, -1});
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  int number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<size_t>(end - begin);
    return add({Op::Number, value, -1, -1, -1});
  }

  const std::string& text_;
  const std::map<std::string, int>& vars_;
  Expression& out_;
  size_t pos_ = 0;
};

Expression Expression::parse(const std::string& text, const std::map<std::string, int>& variables) {
  Expression e;
  e.text_ = text;
  ExpressionParser p(e.text_, variables, e);
  e.root_ = p.parse();
  return e;
}

std::map<std::string, int> Expression::indexed_names(const std::string& prefix, int n) {
  std::map<std::string, int> names;
  for (int i = 0; i < n; ++i) names[prefix + std::to_string(i)] = i;
  return names;
}

}  // namespace umb
