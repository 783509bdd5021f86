#include "fbl/dual.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fbl/error.hpp"

namespace fbl {

std::optional<HomViolation> hom_violation(const FiniteLattice& L,
                                          std::span<const double> v,
                                          double tol) {
  if (static_cast<int>(v.size()) != L.size())
    raise(ErrorCode::DimensionMismatch,
          "expected " + std::to_string(L.size()) + " values, got " +
              std::to_string(v.size()));
  for (int x = 0; x < L.size(); ++x) {
    if (std::abs(v[x]) > 1.0 + tol) {
      HomViolation viol;
      viol.a = x;
      viol.b = x;
      viol.out_of_range = true;
      viol.actual = v[x];
      return viol;
    }
  }
  for (int a = 0; a < L.size(); ++a) {
    for (int b = a; b < L.size(); ++b) {
      const double lo = std::min(v[a], v[b]);
      const double hi = std::max(v[a], v[b]);
      if (std::abs(v[L.meet(a, b)] - lo) > tol)
        return HomViolation{a, b, true, lo, v[L.meet(a, b)], false};
      if (std::abs(v[L.join(a, b)] - hi) > tol)
        return HomViolation{a, b, false, hi, v[L.join(a, b)], false};
    }
  }
  return std::nullopt;
}

bool is_hom(const FiniteLattice& L, std::span<const double> v, double tol) {
  return !hom_violation(L, v, tol).has_value();
}

bool is_hom(const DualPoint& point, double tol) {
  return is_hom(*point.lattice, point.values, tol);
}

bool in_KL(const DualPoint& point, double tol) {
  const double endpoint =
      std::max(std::abs(point.at_min()), std::abs(point.at_max()));
  return std::abs(endpoint - 1.0) <= tol;
}

double LayeredHom::top_value() const {
  double top = base;
  for (double c : increments) top += c;
  return top;
}

DualPoint LayeredHom::materialize() const {
  if (!lattice) raise(ErrorCode::InvalidLayering, "layered hom has no lattice");
  const auto& L = *lattice;
  if (chain.size() != increments.size())
    raise(ErrorCode::InvalidLayering, "chain and increments differ in length");
  if (base < -1.0 || base > 1.0)
    raise(ErrorCode::InvalidLayering, "base outside [-1, 1]");
  const auto& jis = L.join_irreducibles();
  for (std::size_t j = 0; j < chain.size(); ++j) {
    if (!std::binary_search(jis.begin(), jis.end(), chain[j]))
      raise(ErrorCode::InvalidLayering,
            "chain element " + std::to_string(chain[j]) +
                " is not join-irreducible");
    if (increments[j] < 0.0)
      raise(ErrorCode::InvalidLayering, "negative increment");
    if (j > 0 && !(L.jposet_leq(chain[j - 1], chain[j]) &&
                   chain[j - 1] != chain[j]))
      raise(ErrorCode::InvalidLayering,
            "chain is not strictly increasing in the join-irreducible poset");
  }
  if (top_value() > 1.0 + 1e-15)
    raise(ErrorCode::InvalidLayering, "base + sum of increments exceeds 1");

  DualPoint point;
  point.lattice = lattice;
  point.values.assign(L.size(), base);
  for (std::size_t j = 0; j < chain.size(); ++j)
    for (int x = 0; x < L.size(); ++x)
      if (L.leq(chain[j], x)) point.values[x] += increments[j];
  for (double& v : point.values) v = std::clamp(v, -1.0, 1.0);
  return point;
}

std::vector<DualPoint> enumerate_01_homs(const FiniteLattice::Ptr& lattice) {
  const auto& L = *lattice;
  std::vector<DualPoint> homs;
  homs.push_back({lattice, std::vector<double>(L.size(), 0.0)});
  homs.push_back({lattice, std::vector<double>(L.size(), 1.0)});
  for (const auto& filter : L.prime_filters()) {
    DualPoint p{lattice, std::vector<double>(L.size(), 0.0)};
    for (int x : filter.members) p.values[x] = 1.0;
    homs.push_back(std::move(p));
  }
  return homs;
}

namespace {

std::vector<int> jposet_minimal(const FiniteLattice& L) {
  std::vector<int> minimal;
  for (int p : L.join_irreducibles()) {
    bool is_min = true;
    for (int q : L.join_irreducibles())
      if (q != p && L.jposet_leq(q, p)) {
        is_min = false;
        break;
      }
    if (is_min) minimal.push_back(p);
  }
  return minimal;
}

std::vector<int> jposet_covers(const FiniteLattice& L, int p) {
  std::vector<int> covers;
  for (int q : L.join_irreducibles()) {
    if (q == p || !L.jposet_leq(p, q)) continue;
    bool covering = true;
    for (int r : L.join_irreducibles())
      if (r != p && r != q && L.jposet_leq(p, r) && L.jposet_leq(r, q)) {
        covering = false;
        break;
      }
    if (covering) covers.push_back(q);
  }
  return covers;
}

std::vector<int> random_maximal_chain(const FiniteLattice& L, Rng& rng) {
  std::vector<int> chain;
  std::vector<int> frontier = jposet_minimal(L);
  if (frontier.empty()) return chain;
  int current = frontier[rng.below(frontier.size())];
  chain.push_back(current);
  for (;;) {
    std::vector<int> covers = jposet_covers(L, current);
    if (covers.empty()) break;
    current = covers[rng.below(covers.size())];
    chain.push_back(current);
  }
  return chain;
}

// Uniform over the solid simplex {c >= 0, sum c <= budget} via normalized
// exponentials with one slack coordinate.
std::vector<double> simplex_interior(Rng& rng, std::size_t k, double budget) {
  std::vector<double> c(k, 0.0);
  if (k == 0) return c;
  double total = 0.0;
  std::vector<double> e(k + 1);
  for (auto& x : e) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  for (std::size_t j = 0; j < k; ++j) c[j] = budget * e[j] / total;
  return c;
}

// Uniform over the face {c >= 0, sum c = budget}.
std::vector<double> simplex_face(Rng& rng, std::size_t k, double budget) {
  std::vector<double> c(k, 0.0);
  if (k == 0) return c;
  double total = 0.0;
  for (auto& x : c) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  for (auto& x : c) x = budget * x / total;
  return c;
}

}  // namespace

std::vector<LayeredHom> sample_layered(const FiniteLattice::Ptr& lattice,
                                       int count, uint64_t seed, bool on_KL,
                                       bool two_valued) {
  if (count < 1) raise(ErrorCode::ValidationError, "sample count must be >= 1");
  const auto& L = *lattice;
  if (L.size() == 0) raise(ErrorCode::EmptyKL, "lattice has no elements");
  std::vector<LayeredHom> samples;
  samples.reserve(count);
  for (int i = 0; i < count; ++i) {
    Rng rng(mix64(seed, static_cast<uint64_t>(i)));
    std::vector<int> maximal = random_maximal_chain(L, rng);
    std::size_t keep = rng.below(maximal.size() + 1);
    if (two_valued) keep = std::min<std::size_t>(keep, 1);
    maximal.resize(keep);

    LayeredHom hom;
    hom.lattice = lattice;
    hom.chain = std::move(maximal);
    const std::size_t k = hom.chain.size();
    if (!on_KL) {
      hom.base = rng.uniform(-1.0, 1.0);
      hom.increments = simplex_interior(rng, k, 1.0 - hom.base);
    } else if (rng.coin()) {
      // Face base = -1.
      hom.base = -1.0;
      hom.increments = simplex_interior(rng, k, 2.0);
    } else if (k == 0) {
      hom.base = 1.0;  // top = 1 forces the constant 1 on an empty chain
    } else {
      hom.base = rng.uniform(-1.0, 1.0);
      hom.increments = simplex_face(rng, k, 1.0 - hom.base);
    }
    samples.push_back(std::move(hom));
  }
  return samples;
}

std::vector<DualPoint> sample_dual(const FiniteLattice::Ptr& lattice, int count,
                                   uint64_t seed, bool on_KL, bool two_valued) {
  std::vector<DualPoint> points;
  points.reserve(count);
  for (auto& hom : sample_layered(lattice, count, seed, on_KL, two_valued)) {
    DualPoint p = hom.materialize();
    if (on_KL) {
      // Pin the binding endpoint exactly; sampling rounding stays below tol.
      if (hom.base == -1.0)
        p.values[lattice->min_index()] = -1.0;
      else
        p.values[lattice->max_index()] = 1.0;
    }
    points.push_back(std::move(p));
  }
  return points;
}

JiChain make_ji_chain(const FiniteLattice& L, std::vector<int> elements) {
  JiChain chain;
  chain.elements = std::move(elements);
  chain.region.assign(L.size(), 0);
  for (int x = 0; x < L.size(); ++x) {
    int region = 0;
    for (std::size_t j = 0; j < chain.elements.size(); ++j)
      if (L.leq(chain.elements[j], x)) region = static_cast<int>(j) + 1;
    chain.region[x] = region;
  }
  return chain;
}

std::vector<JiChain> maximal_ji_chains(const FiniteLattice& L) {
  std::vector<JiChain> chains;
  std::vector<int> stack;
  auto extend = [&](auto&& self, int last) -> void {
    std::vector<int> covers = jposet_covers(L, last);
    if (covers.empty()) {
      chains.push_back(make_ji_chain(L, stack));
      return;
    }
    for (int q : covers) {
      stack.push_back(q);
      self(self, q);
      stack.pop_back();
    }
  };
  std::vector<int> minimal = jposet_minimal(L);
  if (minimal.empty()) {
    chains.push_back(make_ji_chain(L, {}));
    return chains;
  }
  for (int p : minimal) {
    stack.push_back(p);
    extend(extend, p);
    stack.pop_back();
  }
  return chains;
}

void profile_to_values(const JiChain& chain, std::span<const double> profile,
                       std::span<double> out) {
  for (std::size_t x = 0; x < out.size(); ++x)
    out[x] = profile[chain.region[x]];
}

DualPoint profile_point(const FiniteLattice::Ptr& lattice, const JiChain& chain,
                        std::span<const double> profile) {
  DualPoint p;
  p.lattice = lattice;
  p.values.resize(lattice->size());
  profile_to_values(chain, profile, p.values);
  return p;
}

std::optional<LayeredHom> recover_layering(const FiniteLattice::Ptr& lattice,
                                           std::span<const double> v) {
  const auto& L = *lattice;
  if (static_cast<int>(v.size()) != L.size()) return std::nullopt;
  LayeredHom hom;
  hom.lattice = lattice;
  hom.base = v[L.min_index()];

  std::vector<double> levels(v.begin(), v.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (levels.empty() || levels.front() != hom.base) return std::nullopt;

  double previous = hom.base;
  for (std::size_t j = 1; j < levels.size(); ++j) {
    // The level set {x : v(x) >= levels[j]} must be the up-set of a single
    // join-irreducible, its minimum.
    int generator = -1;
    for (int x = 0; x < L.size(); ++x) {
      if (v[x] < levels[j]) continue;
      generator = generator == -1 ? x : L.meet(generator, x);
    }
    if (generator == -1) return std::nullopt;
    const auto& jis = L.join_irreducibles();
    if (!std::binary_search(jis.begin(), jis.end(), generator))
      return std::nullopt;
    for (int x = 0; x < L.size(); ++x)
      if ((v[x] >= levels[j]) != L.leq(generator, x)) return std::nullopt;
    hom.chain.push_back(generator);
    hom.increments.push_back(levels[j] - previous);
    previous = levels[j];
  }
  return hom;
}

}  // namespace fbl
