#pragma once

#include <memory>
#include <string>

#include "metastab/func_nn.hpp"
#include "metastab/nat.hpp"

namespace metastab {

/// Finitely described counterexample function over the grammar
///
///   expr := "const" <nat> | "id" | "affine" <nat> <nat> | "comp" expr expr
///
/// ("affine a b" means n -> a*n + b; "comp f g" means n -> f(g(n))).
/// Every expressible function is nondecreasing and carries a log2 range
/// bound, so both exact and log2-upper bound evaluation stay available.
class GExpr {
 public:
  enum class Kind { constant, identity, affine, compose };

  static GExpr constant(Nat k);
  static GExpr identity();
  static GExpr affine(Nat a, Nat b);
  static GExpr compose(GExpr outer, GExpr inner);

  /// Parses the grammar; extra trailing tokens are an error.
  static GExpr parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  std::string str() const;  // canonical text; parse(str()) round-trips
  FuncNN func() const;

  friend bool operator==(const GExpr& a, const GExpr& b);

 private:
  GExpr(Kind k, Nat a, Nat b) : kind_(k), a_(std::move(a)), b_(std::move(b)) {}

  Kind kind_;
  Nat a_, b_;  // constant value / affine coefficients
  std::shared_ptr<const GExpr> outer_, inner_;
};

}  // namespace metastab
