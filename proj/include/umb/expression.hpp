#pragma once

// Minimal arithmetic expressions: + - * / ^, unary minus, parentheses,
// numbers, the constant pi, and the functions sin cos exp sqrt. Variables are
// resolved against a caller-supplied name table.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "umb/jet.hpp"

namespace umb {

class Expression {
 public:
  static Expression parse(const std::string& text, const std::map<std::string, int>& variables);

  // Name table x0..x{n-1}.
  static std::map<std::string, int> indexed_names(const std::string& prefix, int n);

  template <class T>
  T eval(const T* vars) const {
    return eval_node<T>(root_, vars);
  }

  // Largest variable index referenced, -1 if none.
  int max_variable() const { return max_var_; }
  const std::string& text() const { return text_; }

 private:
  enum class Op { Number, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Sqrt };
  struct Node {
    Op op;
    double value = 0.0;
    int var = -1;
    int lhs = -1;
    int rhs = -1;
    bool constant = false;  // subtree does not reference variables
  };

  template <class T>
  T eval_node(int idx, const T* vars) const {
    using std::cos, std::exp, std::pow, std::sin, std::sqrt;
    const Node& n = nodes_[idx];
    switch (n.op) {
      case Op::Number: return T(n.value);
      case Op::Var: return vars[n.var];
      case Op::Add: return eval_node<T>(n.lhs, vars) + eval_node<T>(n.rhs, vars);
      case Op::Sub: return eval_node<T>(n.lhs, vars) - eval_node<T>(n.rhs, vars);
      case Op::Mul: return eval_node<T>(n.lhs, vars) * eval_node<T>(n.rhs, vars);
      case Op::Div: return eval_node<T>(n.lhs, vars) / eval_node<T>(n.rhs, vars);
      case Op::Pow:
        if (nodes_[n.rhs].constant) {
          const double p = value_of(eval_node<T>(n.rhs, vars));
          return pow(eval_node<T>(n.lhs, vars), p);
        }
        return pow(eval_node<T>(n.lhs, vars), eval_node<T>(n.rhs, vars));
      case Op::Neg: return -eval_node<T>(n.lhs, vars);
      case Op::Sin: return sin(eval_node<T>(n.lhs, vars));
      case Op::Cos: return cos(eval_node<T>(n.lhs, vars));
      case Op::Exp: return exp(eval_node<T>(n.lhs, vars));
      case Op::Sqrt: return sqrt(eval_node<T>(n.lhs, vars));
    }
    return T(0.0);
  }

  friend class ExpressionParser;
  std::vector<Node> nodes_;
  int root_ = -1;
  int max_var_ = -1;
  std::string text_;
};

}  // namespace umb
