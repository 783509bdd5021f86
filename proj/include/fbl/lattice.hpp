#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace fbl {

/// A finite bounded distributive lattice. Elements are dense integer indices;
/// labels are metadata only. All derived tables (meet, join, order, the poset
/// of join-irreducibles) are computed at construction and never mutated, so
/// instances are safe to share across threads.
class FiniteLattice {
 public:
  using Ptr = std::shared_ptr<const FiniteLattice>;

  struct Options {
    // When set, construction skips the distributivity gate so that
    // is_distributive() can be exercised on counterexamples.
    bool allow_nondistributive = false;
  };

  /// Explicit construction from labels and order pairs (i <= j). The relation
  /// is closed reflexively and transitively; antisymmetry violations raise
  /// CycleInOrder, missing bounds NotBounded, missing meets/joins NotALattice,
  /// and failing the distributive law NotDistributive.
  static Ptr from_order(std::vector<std::string> labels,
                        const std::vector<std::pair<int, int>>& leq_pairs,
                        Options options = {});

  /// Bounded chain with n >= 2 elements labelled m < a1 < ... < M.
  static Ptr chain(int n);

  /// Boolean algebra 2^n, n in [0, 6]; atoms are labelled a, b, c, ...
  static Ptr boolean_algebra(int n);

  /// Product lattice with the componentwise order, materialized tables.
  static Ptr product(const Ptr& left, const Ptr& right);

  /// Lattice of down-sets of an explicit poset, ordered by inclusion.
  static Ptr downsets(const std::vector<std::string>& poset_labels,
                      const std::vector<std::pair<int, int>>& poset_leq);

  /// Parses "chain:N", "ba:N" and products of those joined with 'x'
  /// (e.g. "chain:2xchain:3").
  static Ptr parse_spec(const std::string& text);

  /// Parses the JSON form: either {"elements": [...], "leq": [[i,j],...]} or
  /// {"family": "chain"|"ba"|"product"|"downsets", ...}.
  static Ptr from_json(const nlohmann::json& spec);

  int size() const { return size_; }
  int min_index() const { return min_index_; }
  int max_index() const { return max_index_; }

  bool leq(int a, int b) const { return leq_[idx(a, b)]; }
  int meet(int a, int b) const { return meet_[idx(a, b)]; }
  int join(int a, int b) const { return join_[idx(a, b)]; }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int a) const { return labels_[a]; }

  /// Elements that are not the minimum and not a join of two strictly
  /// smaller elements; sorted ascending.
  const std::vector<int>& join_irreducibles() const { return join_irreducibles_; }

  /// Order restricted to join-irreducibles (arguments are element indices).
  bool jposet_leq(int p, int q) const { return leq(p, q); }

  /// Element index for a name; "m" and "M" are reserved for the bounds.
  /// Raises ParseError for unknown names.
  int resolve(const std::string& name) const;

  /// The up-set of a join-irreducible generator; one per join-irreducible.
  struct PrimeFilter {
    int generator = -1;
    std::vector<int> members;  // sorted ascending

    bool contains(int x) const;
  };

  /// Prime filters sorted by generator index. Containment between filters
  /// mirrors the join-irreducible order: up(p) contains up(q) iff p <= q.
  std::vector<PrimeFilter> prime_filters() const;

  /// Returns a violating (a, b, c) with a^(bvc) != (a^b)v(a^c), if any.
  std::optional<std::array<int, 3>> distributivity_counterexample() const;

  /// Hasse diagram (covering relation only) in DOT syntax.
  std::string dot() const;

  nlohmann::json to_json() const;

  /// The spec string or constructed description this lattice came from;
  /// echoed into reports.
  const std::string& spec_text() const { return spec_text_; }

  /// True when the identity map over some index bijection preserves order
  /// both ways. Brute force; intended for sizes <= 8.
  static bool isomorphic(const FiniteLattice& a, const FiniteLattice& b);

 private:
  FiniteLattice() = default;
  std::size_t idx(int a, int b) const {
    return static_cast<std::size_t>(a) * size_ + b;
  }
  static Ptr build(std::vector<std::string> labels, std::vector<char> closed_leq,
                   Options options, std::string spec_text);

  int size_ = 0;
  int min_index_ = -1;
  int max_index_ = -1;
  std::vector<std::string> labels_;
  std::vector<char> leq_;   // row-major size x size
  std::vector<int> meet_;
  std::vector<int> join_;
  std::vector<int> join_irreducibles_;
  std::string spec_text_;
};

/// True iff all triples satisfy a^(bvc) = (a^b)v(a^c). The check runs eagerly
/// at construction unless allow_nondistributive was set.
bool is_distributive(const FiniteLattice& lattice,
                     std::array<int, 3>* counterexample = nullptr);

}  // namespace fbl
