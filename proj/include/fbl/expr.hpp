#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fbl/dual.hpp"
#include "fbl/lattice.hpp"

namespace fbl {

struct LatticeMap;

enum class ExprKind : uint8_t { Delta, Scale, Plus, Vee, Wedge, Abs };

struct ExprNode {
  ExprKind kind = ExprKind::Delta;
  int left = -1;
  int right = -1;
  int element = -1;    // Delta only
  double scalar = 0.0;  // Scale only
};

/// A vector-lattice expression over the generators delta_x, bound to the
/// lattice it was built on. Nodes are stored child-before-parent, so a single
/// forward sweep evaluates the tree. Immutable after construction.
class Expr {
 public:
  static Expr delta(const FiniteLattice::Ptr& lattice, int element);
  static Expr delta(const FiniteLattice::Ptr& lattice, const std::string& name);

  Expr scale(double factor) const;
  Expr abs() const;
  friend Expr plus(const Expr& a, const Expr& b);
  friend Expr minus(const Expr& a, const Expr& b);  // sugar: a + (-1) * b
  friend Expr vee(const Expr& a, const Expr& b);
  friend Expr wedge(const Expr& a, const Expr& b);

  /// Parses the s-expression grammar:
  ///   (delta x) (scale a e) (plus e e) (minus e e) (vee e e) (wedge e e) (abs e)
  /// Element names resolve against the lattice labels, with m and M reserved
  /// for the bounds. Raises ParseError.
  static Expr parse(const FiniteLattice::Ptr& lattice, std::string_view text);

  double eval(const DualPoint& point) const;  // LatticeMismatch on foreign points
  double eval_values(std::span<const double> values) const;
  double eval_values(std::span<const double> values,
                     std::vector<double>& scratch) const;

  /// Evaluates against a chain profile without materializing element values.
  double eval_profile(const JiChain& chain, std::span<const double> profile,
                      std::vector<double>& scratch) const;

  /// K with |eval(x*) - eval(y*)| <= K * max_x |x*(x) - y*(x)| for all dual
  /// points. Rules: Delta -> 1, Scale -> |a|K, Plus -> K1+K2,
  /// Vee/Wedge -> max(K1,K2), Abs -> K.
  double lipschitz_bound() const;

  /// Valid norm upper bound by the triangle inequality: Delta -> 1,
  /// Scale -> |a|c, Plus/Vee/Wedge -> c1+c2, Abs -> c.
  double triangle_ceiling() const;

  int depth() const;

  /// Element indices appearing as Delta leaves, deduplicated, ascending.
  std::vector<int> leaf_elements() const;

  std::string to_sexpr() const;

  const FiniteLattice::Ptr& lattice() const { return lattice_; }
  std::span<const ExprNode> nodes() const { return nodes_; }
  int root() const { return static_cast<int>(nodes_.size()) - 1; }

 private:
  Expr() = default;
  static Expr combine(ExprKind kind, const Expr& a, const Expr& b);
  friend Expr precompose(const Expr& expr, const LatticeMap& map);

  FiniteLattice::Ptr lattice_;
  std::vector<ExprNode> nodes_;
};

Expr plus(const Expr& a, const Expr& b);
Expr minus(const Expr& a, const Expr& b);
Expr vee(const Expr& a, const Expr& b);
Expr wedge(const Expr& a, const Expr& b);

/// A meet/join preserving map between two lattices; with `bounded` set it
/// must also send bounds to bounds. validate() raises NotAHomomorphism.
struct LatticeMap {
  FiniteLattice::Ptr source;
  FiniteLattice::Ptr target;
  std::vector<int> mapping;
  bool bounded = true;

  void validate() const;
  int operator()(int x) const { return mapping[x]; }

  static LatticeMap identity(const FiniteLattice::Ptr& lattice);
};

/// Composition in diagram order: apply `first`, then `second`.
LatticeMap compose(const LatticeMap& second, const LatticeMap& first);

/// Substitutes every Delta(x) by Delta(map(x)), rebinding the expression to
/// the map's target. Realizes the functorial maps induced by lattice
/// homomorphisms: eval(subst(e, f), y*) = eval(e, y* o f).
Expr precompose(const Expr& expr, const LatticeMap& map);

}  // namespace fbl
