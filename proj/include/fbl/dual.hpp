#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fbl/lattice.hpp"
#include "fbl/rng.hpp"

namespace fbl {

/// Absolute tolerance for homomorphism validation. Internal constructions are
/// exact up to floating rounding; this only absorbs arithmetic noise.
inline constexpr double kHomTolerance = 1e-12;

/// A point of the dual space: a lattice homomorphism into [-1, 1], stored as
/// one value per element.
struct DualPoint {
  FiniteLattice::Ptr lattice;
  std::vector<double> values;

  double at_min() const { return values[lattice->min_index()]; }
  double at_max() const { return values[lattice->max_index()]; }
};

struct HomViolation {
  int a = -1;
  int b = -1;
  bool meet_side = true;  // false: the join equation failed
  double expected = 0.0;
  double actual = 0.0;
  bool out_of_range = false;  // some |value| exceeds 1
};

/// Checks v in [-1,1]^n and both homomorphism equations on all pairs.
/// Returns the first violation found, or nullopt when v is a homomorphism.
/// Raises DimensionMismatch when v has the wrong length.
std::optional<HomViolation> hom_violation(const FiniteLattice& lattice,
                                          std::span<const double> v,
                                          double tol = kHomTolerance);

bool is_hom(const FiniteLattice& lattice, std::span<const double> v,
            double tol = kHomTolerance);
bool is_hom(const DualPoint& point, double tol = kHomTolerance);

/// Membership in K_L: max(|v(m)|, |v(M)|) = 1 within tol.
bool in_KL(const DualPoint& point, double tol = kHomTolerance);

/// Parametrization of a dual point as a base value plus nonnegative
/// increments along a nested chain of prime filters: the materialized point
/// is x*(x) = base + sum{increments[j] : x in up(chain[j])}.
struct LayeredHom {
  FiniteLattice::Ptr lattice;
  double base = 0.0;
  std::vector<int> chain;          // strictly increasing join-irreducibles
  std::vector<double> increments;  // same length as chain, each >= 0

  /// Materializes the dual point; raises InvalidLayering when the field
  /// constraints fail (chain not strictly increasing among join-irreducibles,
  /// negative increment, base < -1, or base + sum > 1).
  DualPoint materialize() const;

  double top_value() const;  // base + sum of increments
};

/// All 0/1-valued homomorphisms: constant 0, constant 1, and the indicator of
/// every prime filter, in that order. Count = 2 + #join^irreducibles.
std::vector<DualPoint> enumerate_01_homs(const FiniteLattice::Ptr& lattice);

/// Deterministic sampler over the dual space. Each sample picks a random
/// maximal chain of join-irreducibles truncated at a random length, then a
/// random feasible (base, increments). With on_KL the sample is conditioned
/// onto a K_L face (base = -1 or top = 1, each with probability 1/2). With
/// two_valued the chain is truncated to length <= 1.
std::vector<LayeredHom> sample_layered(const FiniteLattice::Ptr& lattice,
                                       int count, uint64_t seed, bool on_KL,
                                       bool two_valued = false);

std::vector<DualPoint> sample_dual(const FiniteLattice::Ptr& lattice, int count,
                                   uint64_t seed, bool on_KL,
                                   bool two_valued = false);

/// A maximal chain p_1 < ... < p_k of join-irreducibles together with the
/// region index of every element: region[x] = #{j : p_j <= x}. A value
/// profile w_0 <= ... <= w_k turns into the dual point x -> w[region[x]].
struct JiChain {
  std::vector<int> elements;
  std::vector<int> region;
};

JiChain make_ji_chain(const FiniteLattice& lattice, std::vector<int> elements);

/// All maximal chains of the join-irreducible poset (the empty chain when
/// there are no join-irreducibles). Every dual point is value-equivalent to a
/// monotone profile over one of these.
std::vector<JiChain> maximal_ji_chains(const FiniteLattice& lattice);

/// Materializes a monotone profile over a chain into per-element values.
void profile_to_values(const JiChain& chain, std::span<const double> profile,
                       std::span<double> out);

DualPoint profile_point(const FiniteLattice::Ptr& lattice, const JiChain& chain,
                        std::span<const double> profile);

/// Recovers the layered parametrization of a homomorphism vector: base is the
/// value at the minimum, increments come from the sorted distinct values, and
/// the level sets must be up-sets of single join-irreducibles. Returns
/// nullopt when v is not a homomorphism of this shape (completeness of the
/// parametrization means this never happens for genuine homomorphisms).
std::optional<LayeredHom> recover_layering(const FiniteLattice::Ptr& lattice,
                                           std::span<const double> v);

}  // namespace fbl
