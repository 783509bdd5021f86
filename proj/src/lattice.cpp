#include "fbl/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fbl/error.hpp"

namespace fbl {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotALattice: return "NotALattice";
    case ErrorCode::NotDistributive: return "NotDistributive";
    case ErrorCode::NotBounded: return "NotBounded";
    case ErrorCode::CycleInOrder: return "CycleInOrder";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidLayering: return "InvalidLayering";
    case ErrorCode::EmptyKL: return "EmptyKL";
    case ErrorCode::LatticeMismatch: return "LatticeMismatch";
    case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::NotARetraction: return "NotARetraction";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::NTooLarge: return "NTooLarge";
    case ErrorCode::OutOfSquare: return "OutOfSquare";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::NotInU: return "NotInU";
    case ErrorCode::NotBooleanAlgebra: return "NotBooleanAlgebra";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "UnknownError";
}

namespace {

constexpr int kMaxElements = 512;

std::string pair_text(const std::vector<std::string>& labels, int a, int b) {
  return "(" + labels[a] + ", " + labels[b] + ")";
}

}  // namespace

FiniteLattice::Ptr FiniteLattice::build(std::vector<std::string> labels,
                                        std::vector<char> closed_leq,
                                        Options options, std::string spec_text) {
  const int n = static_cast<int>(labels.size());
  if (n == 0) raise(ErrorCode::NotBounded, "empty lattice has no bounds");
  if (n > kMaxElements)
    raise(ErrorCode::ValidationError,
          "lattice exceeds " + std::to_string(kMaxElements) + " elements");

  auto lat = std::shared_ptr<FiniteLattice>(new FiniteLattice());
  lat->size_ = n;
  lat->labels_ = std::move(labels);
  lat->leq_ = std::move(closed_leq);
  lat->spec_text_ = std::move(spec_text);
  auto& L = *lat;

  // Antisymmetry: a <= b <= a with a != b means the input order had a cycle.
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (L.leq(a, b) && L.leq(b, a))
        raise(ErrorCode::CycleInOrder,
              "elements " + pair_text(L.labels_, a, b) + " are order-equivalent");

  // Meet and join tables; report the first pair lacking one.
  L.meet_.assign(static_cast<std::size_t>(n) * n, -1);
  L.join_.assign(static_cast<std::size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int glb = -1;
      for (int c = 0; c < n; ++c) {
        if (!L.leq(c, a) || !L.leq(c, b)) continue;
        if (glb == -1 || L.leq(glb, c)) glb = c;
      }
      if (glb != -1)
        for (int c = 0; c < n; ++c)
          if (L.leq(c, a) && L.leq(c, b) && !L.leq(c, glb)) glb = -1;
      if (glb == -1)
        raise(ErrorCode::NotALattice,
              "no meet for " + pair_text(L.labels_, a, b));
      L.meet_[L.idx(a, b)] = glb;

      int lub = -1;
      for (int c = 0; c < n; ++c) {
        if (!L.leq(a, c) || !L.leq(b, c)) continue;
        if (lub == -1 || L.leq(c, lub)) lub = c;
      }
      if (lub != -1)
        for (int c = 0; c < n; ++c)
          if (L.leq(a, c) && L.leq(b, c) && !L.leq(lub, c)) lub = -1;
      if (lub == -1)
        raise(ErrorCode::NotALattice,
              "no join for " + pair_text(L.labels_, a, b));
      L.join_[L.idx(a, b)] = lub;
    }
  }

  for (int a = 0; a < n; ++a) {
    bool is_min = true, is_max = true;
    for (int b = 0; b < n; ++b) {
      is_min = is_min && L.leq(a, b);
      is_max = is_max && L.leq(b, a);
    }
    if (is_min) L.min_index_ = a;
    if (is_max) L.max_index_ = a;
  }
  if (L.min_index_ < 0 || L.max_index_ < 0)
    raise(ErrorCode::NotBounded, "order has no global minimum or maximum");

  if (!options.allow_nondistributive) {
    std::array<int, 3> triple{};
    if (!is_distributive(L, &triple))
      raise(ErrorCode::NotDistributive,
            "triple (" + L.labels_[triple[0]] + ", " + L.labels_[triple[1]] +
                ", " + L.labels_[triple[2]] + ") violates distributivity");
  }

  // x is join-irreducible iff x != min and no two strictly smaller elements
  // join to x.
  for (int x = 0; x < n; ++x) {
    if (x == L.min_index_) continue;
    bool irreducible = true;
    for (int a = 0; a < n && irreducible; ++a) {
      if (!L.leq(a, x) || a == x) continue;
      for (int b = 0; b < n; ++b) {
        if (!L.leq(b, x) || b == x) continue;
        if (L.join(a, b) == x) {
          irreducible = false;
          break;
        }
      }
    }
    if (irreducible) L.join_irreducibles_.push_back(x);
  }

  return lat;
}

FiniteLattice::Ptr FiniteLattice::from_order(
    std::vector<std::string> labels,
    const std::vector<std::pair<int, int>>& leq_pairs, Options options) {
  const int n = static_cast<int>(labels.size());
  if (n == 0) raise(ErrorCode::NotBounded, "empty lattice has no bounds");
  std::vector<char> rel(static_cast<std::size_t>(n) * n, 0);
  auto at = [&](int a, int b) -> char& {
    return rel[static_cast<std::size_t>(a) * n + b];
  };
  for (int a = 0; a < n; ++a) at(a, a) = 1;
  for (const auto& [a, b] : leq_pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      raise(ErrorCode::ValidationError, "leq pair index out of range");
    at(a, b) = 1;
  }
  // Transitive closure (Warshall).
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      if (at(a, k))
        for (int b = 0; b < n; ++b)
          if (at(k, b)) at(a, b) = 1;
  return build(std::move(labels), std::move(rel), options, "explicit");
}

FiniteLattice::Ptr FiniteLattice::chain(int n) {
  if (n < 2) raise(ErrorCode::ValidationError, "chain:n requires n >= 2");
  std::vector<std::string> labels(n);
  labels[0] = "m";
  labels[n - 1] = "M";
  for (int i = 1; i + 1 < n; ++i) labels[i] = "a" + std::to_string(i);
  std::vector<char> rel(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) rel[static_cast<std::size_t>(a) * n + b] = 1;
  return build(std::move(labels), std::move(rel), {}, "chain:" + std::to_string(n));
}

FiniteLattice::Ptr FiniteLattice::boolean_algebra(int n) {
  if (n < 0 || n > 6)
    raise(ErrorCode::ValidationError, "ba:n requires 0 <= n <= 6");
  const int size = 1 << n;
  std::vector<std::string> labels(size);
  for (int mask = 0; mask < size; ++mask) {
    if (mask == 0) {
      labels[mask] = n == 0 ? "M" : "m";
    } else if (mask == size - 1) {
      labels[mask] = "M";
    } else {
      std::string name;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) name += static_cast<char>('a' + i);
      labels[mask] = name;
    }
  }
  std::vector<char> rel(static_cast<std::size_t>(size) * size, 0);
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b)
      if ((a & b) == a) rel[static_cast<std::size_t>(a) * size + b] = 1;
  return build(std::move(labels), std::move(rel), {}, "ba:" + std::to_string(n));
}

FiniteLattice::Ptr FiniteLattice::product(const Ptr& left, const Ptr& right) {
  if (!left || !right) raise(ErrorCode::ValidationError, "null product factor");
  const int nl = left->size(), nr = right->size();
  const int n = nl * nr;
  std::vector<std::string> labels(n);
  std::vector<char> rel(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a) {
    const int al = a / nr, ar = a % nr;
    labels[a] = "(" + left->label(al) + "," + right->label(ar) + ")";
    for (int b = 0; b < n; ++b) {
      const int bl = b / nr, br = b % nr;
      if (left->leq(al, bl) && right->leq(ar, br))
        rel[static_cast<std::size_t>(a) * n + b] = 1;
    }
  }
  return build(std::move(labels), std::move(rel), {},
               left->spec_text() + "x" + right->spec_text());
}

FiniteLattice::Ptr FiniteLattice::downsets(
    const std::vector<std::string>& poset_labels,
    const std::vector<std::pair<int, int>>& poset_leq) {
  const int k = static_cast<int>(poset_labels.size());
  if (k < 0 || k > 16)
    raise(ErrorCode::ValidationError, "downsets poset limited to 16 elements");
  std::vector<char> rel(static_cast<std::size_t>(k) * k, 0);
  for (int a = 0; a < k; ++a) rel[static_cast<std::size_t>(a) * k + a] = 1;
  for (const auto& [a, b] : poset_leq) {
    if (a < 0 || a >= k || b < 0 || b >= k)
      raise(ErrorCode::ValidationError, "poset leq index out of range");
    rel[static_cast<std::size_t>(a) * k + b] = 1;
  }
  for (int c = 0; c < k; ++c)
    for (int a = 0; a < k; ++a)
      if (rel[static_cast<std::size_t>(a) * k + c])
        for (int b = 0; b < k; ++b)
          if (rel[static_cast<std::size_t>(c) * k + b])
            rel[static_cast<std::size_t>(a) * k + b] = 1;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (rel[static_cast<std::size_t>(a) * k + b] &&
          rel[static_cast<std::size_t>(b) * k + a])
        raise(ErrorCode::CycleInOrder, "poset order has a cycle");

  // Enumerate down-closed subsets; sorted by (size, mask) so the empty set
  // comes first and the full set last.
  std::vector<uint32_t> sets;
  for (uint32_t mask = 0; mask < (1u << k); ++mask) {
    bool closed = true;
    for (int b = 0; b < k && closed; ++b) {
      if (!(mask & (1u << b))) continue;
      for (int a = 0; a < k; ++a)
        if (rel[static_cast<std::size_t>(a) * k + b] && !(mask & (1u << a))) {
          closed = false;
          break;
        }
    }
    if (closed) sets.push_back(mask);
  }
  std::sort(sets.begin(), sets.end(), [](uint32_t a, uint32_t b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa < pb : a < b;
  });

  const int n = static_cast<int>(sets.size());
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) {
    std::string name = "{";
    bool first = true;
    for (int e = 0; e < k; ++e)
      if (sets[i] & (1u << e)) {
        if (!first) name += ",";
        name += poset_labels[e];
        first = false;
      }
    labels[i] = name + "}";
  }
  std::vector<char> order(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((sets[a] & sets[b]) == sets[a])
        order[static_cast<std::size_t>(a) * n + b] = 1;
  return build(std::move(labels), std::move(order), {}, "downsets");
}

FiniteLattice::Ptr FiniteLattice::parse_spec(const std::string& text) {
  if (text.empty()) raise(ErrorCode::ParseError, "empty lattice spec");
  // Product factors are joined with 'x'; factors themselves contain no 'x'.
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == 'x') {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);

  auto parse_factor = [](const std::string& tok) -> Ptr {
    auto colon = tok.find(':');
    if (colon == std::string::npos)
      raise(ErrorCode::ParseError, "lattice spec '" + tok +
                                       "' is not chain:N or ba:N");
    const std::string family = tok.substr(0, colon);
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(tok.substr(colon + 1), &used);
      if (used != tok.size() - colon - 1) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      raise(ErrorCode::ParseError, "bad size in lattice spec '" + tok + "'");
    }
    if (family == "chain") return chain(n);
    if (family == "ba") return boolean_algebra(n);
    raise(ErrorCode::ParseError, "unknown lattice family '" + family + "'");
  };

  Ptr result = parse_factor(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i)
    result = product(result, parse_factor(parts[i]));
  return result;
}

FiniteLattice::Ptr FiniteLattice::from_json(const nlohmann::json& spec) {
  if (!spec.is_object()) raise(ErrorCode::ParseError, "lattice JSON must be an object");
  if (spec.contains("family")) {
    const std::string family = spec.at("family").get<std::string>();
    if (family == "chain") return chain(spec.at("n").get<int>());
    if (family == "ba") return boolean_algebra(spec.at("n").get<int>());
    if (family == "product") {
      const auto& factors = spec.at("factors");
      if (!factors.is_array() || factors.size() < 2)
        raise(ErrorCode::ParseError, "product needs at least two factors");
      Ptr result = from_json(factors[0]);
      for (std::size_t i = 1; i < factors.size(); ++i)
        result = product(result, from_json(factors[i]));
      return result;
    }
    if (family == "downsets") {
      const auto& poset = spec.at("poset");
      std::vector<std::string> labels =
          poset.at("elements").get<std::vector<std::string>>();
      std::vector<std::pair<int, int>> leq;
      for (const auto& pair : poset.at("leq"))
        leq.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
      return downsets(labels, leq);
    }
    raise(ErrorCode::ParseError, "unknown lattice family '" + family + "'");
  }
  std::vector<std::string> labels =
      spec.at("elements").get<std::vector<std::string>>();
  std::vector<std::pair<int, int>> leq;
  for (const auto& pair : spec.at("leq"))
    leq.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
  return from_order(std::move(labels), leq);
}

int FiniteLattice::resolve(const std::string& name) const {
  if (name == "m") return min_index_;
  if (name == "M") return max_index_;
  for (int i = 0; i < size_; ++i)
    if (labels_[i] == name) return i;
  raise(ErrorCode::ParseError, "unknown element '" + name + "'");
}

bool FiniteLattice::PrimeFilter::contains(int x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

std::vector<FiniteLattice::PrimeFilter> FiniteLattice::prime_filters() const {
  std::vector<PrimeFilter> filters;
  filters.reserve(join_irreducibles_.size());
  for (int p : join_irreducibles_) {
    PrimeFilter f;
    f.generator = p;
    for (int x = 0; x < size_; ++x)
      if (leq(p, x)) f.members.push_back(x);
    filters.push_back(std::move(f));
  }
  return filters;
}

std::optional<std::array<int, 3>> FiniteLattice::distributivity_counterexample()
    const {
  std::array<int, 3> triple{};
  if (is_distributive(*this, &triple)) return std::nullopt;
  return triple;
}

std::string FiniteLattice::dot() const {
  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=BT;\n";
  for (int a = 0; a < size_; ++a)
    out << "  n" << a << " [label=\"" << labels_[a] << "\"];\n";
  for (int a = 0; a < size_; ++a) {
    for (int b = 0; b < size_; ++b) {
      if (a == b || !leq(a, b)) continue;
      bool covering = true;
      for (int c = 0; c < size_ && covering; ++c)
        if (c != a && c != b && leq(a, c) && leq(c, b)) covering = false;
      if (covering) out << "  n" << a << " -> n" << b << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

nlohmann::json FiniteLattice::to_json() const {
  nlohmann::json j;
  j["elements"] = labels_;
  nlohmann::json pairs = nlohmann::json::array();
  for (int a = 0; a < size_; ++a)
    for (int b = 0; b < size_; ++b)
      if (a != b && leq(a, b)) pairs.push_back({a, b});
  j["leq"] = pairs;
  j["min"] = min_index_;
  j["max"] = max_index_;
  j["join_irreducibles"] = join_irreducibles_;
  j["spec"] = spec_text_;
  return j;
}

bool FiniteLattice::isomorphic(const FiniteLattice& a, const FiniteLattice& b) {
  if (a.size() != b.size()) return false;
  const int n = a.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y)
        if (a.leq(x, y) != b.leq(perm[x], perm[y])) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

bool is_distributive(const FiniteLattice& L, std::array<int, 3>* counterexample) {
  const int n = L.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (L.meet(a, L.join(b, c)) != L.join(L.meet(a, b), L.meet(a, c))) {
          if (counterexample) *counterexample = {a, b, c};
          return false;
        }
  return true;
}

}  // namespace fbl
