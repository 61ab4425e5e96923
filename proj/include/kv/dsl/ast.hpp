#pragma once

#include <memory>

namespace kv::dsl {

enum class NodeKind { Constant, Coord, Param, Add, Sub, Mul, Div, Neg, PowInt, Call };
enum class CallKind { Sqrt, Ln, Exp };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  NodeKind kind;
  double constant = 0.0;          // Constant
  int ref = -1;                   // Coord / Param index
  int exponent = 0;               // PowInt
  CallKind call = CallKind::Sqrt; // Call
  Expr a, b;                      // children
};

Expr make_constant(double v);
Expr make_coord(int index);
Expr make_param(int index);
Expr make_binary(NodeKind k, Expr a, Expr b);
Expr make_neg(Expr a);
Expr make_powi(Expr a, int exponent);
Expr make_call(CallKind c, Expr a);

inline Expr operator+(Expr a, Expr b) { return make_binary(NodeKind::Add, std::move(a), std::move(b)); }
inline Expr operator-(Expr a, Expr b) { return make_binary(NodeKind::Sub, std::move(a), std::move(b)); }
inline Expr operator*(Expr a, Expr b) { return make_binary(NodeKind::Mul, std::move(a), std::move(b)); }
inline Expr operator/(Expr a, Expr b) { return make_binary(NodeKind::Div, std::move(a), std::move(b)); }
inline Expr operator-(Expr a) { return make_neg(std::move(a)); }

}  // namespace kv::dsl
