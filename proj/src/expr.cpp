#include "fbl/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "fbl/error.hpp"

namespace fbl {

Expr Expr::delta(const FiniteLattice::Ptr& lattice, int element) {
  if (!lattice) raise(ErrorCode::ValidationError, "expression needs a lattice");
  if (element < 0 || element >= lattice->size())
    raise(ErrorCode::ValidationError,
          "element index " + std::to_string(element) + " out of range");
  Expr e;
  e.lattice_ = lattice;
  ExprNode node;
  node.kind = ExprKind::Delta;
  node.element = element;
  e.nodes_.push_back(node);
  return e;
}

Expr Expr::delta(const FiniteLattice::Ptr& lattice, const std::string& name) {
  return delta(lattice, lattice->resolve(name));
}

Expr Expr::scale(double factor) const {
  Expr e = *this;
  ExprNode node;
  node.kind = ExprKind::Scale;
  node.left = e.root();
  node.scalar = factor;
  e.nodes_.push_back(node);
  return e;
}

Expr Expr::abs() const {
  Expr e = *this;
  ExprNode node;
  node.kind = ExprKind::Abs;
  node.left = e.root();
  e.nodes_.push_back(node);
  return e;
}

Expr Expr::combine(ExprKind kind, const Expr& a, const Expr& b) {
  if (a.lattice_ != b.lattice_)
    raise(ErrorCode::LatticeMismatch,
          "operands are bound to different lattices");
  Expr e = a;
  const int offset = static_cast<int>(e.nodes_.size());
  for (ExprNode node : b.nodes_) {
    if (node.left >= 0) node.left += offset;
    if (node.right >= 0) node.right += offset;
    e.nodes_.push_back(node);
  }
  ExprNode top;
  top.kind = kind;
  top.left = offset - 1;
  top.right = static_cast<int>(e.nodes_.size()) - 1;
  e.nodes_.push_back(top);
  return e;
}

Expr plus(const Expr& a, const Expr& b) {
  return Expr::combine(ExprKind::Plus, a, b);
}

Expr minus(const Expr& a, const Expr& b) { return plus(a, b.scale(-1.0)); }

Expr vee(const Expr& a, const Expr& b) {
  return Expr::combine(ExprKind::Vee, a, b);
}

Expr wedge(const Expr& a, const Expr& b) {
  return Expr::combine(ExprKind::Wedge, a, b);
}

double Expr::eval(const DualPoint& point) const {
  if (point.lattice != lattice_)
    raise(ErrorCode::LatticeMismatch,
          "dual point belongs to a different lattice");
  return eval_values(point.values);
}

double Expr::eval_values(std::span<const double> values) const {
  std::vector<double> scratch;
  return eval_values(values, scratch);
}

double Expr::eval_values(std::span<const double> values,
                         std::vector<double>& scratch) const {
  scratch.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const ExprNode& n = nodes_[i];
    switch (n.kind) {
      case ExprKind::Delta: scratch[i] = values[n.element]; break;
      case ExprKind::Scale: scratch[i] = n.scalar * scratch[n.left]; break;
      case ExprKind::Plus: scratch[i] = scratch[n.left] + scratch[n.right]; break;
      case ExprKind::Vee:
        scratch[i] = std::max(scratch[n.left], scratch[n.right]);
        break;
      case ExprKind::Wedge:
        scratch[i] = std::min(scratch[n.left], scratch[n.right]);
        break;
      case ExprKind::Abs: scratch[i] = std::abs(scratch[n.left]); break;
    }
  }
  return scratch.back();
}

double Expr::eval_profile(const JiChain& chain, std::span<const double> profile,
                          std::vector<double>& scratch) const {
  scratch.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const ExprNode& n = nodes_[i];
    switch (n.kind) {
      case ExprKind::Delta: scratch[i] = profile[chain.region[n.element]]; break;
      case ExprKind::Scale: scratch[i] = n.scalar * scratch[n.left]; break;
      case ExprKind::Plus: scratch[i] = scratch[n.left] + scratch[n.right]; break;
      case ExprKind::Vee:
        scratch[i] = std::max(scratch[n.left], scratch[n.right]);
        break;
      case ExprKind::Wedge:
        scratch[i] = std::min(scratch[n.left], scratch[n.right]);
        break;
      case ExprKind::Abs: scratch[i] = std::abs(scratch[n.left]); break;
    }
  }
  return scratch.back();
}

double Expr::lipschitz_bound() const {
  std::vector<double> k(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const ExprNode& n = nodes_[i];
    switch (n.kind) {
      case ExprKind::Delta: k[i] = 1.0; break;
      case ExprKind::Scale: k[i] = std::abs(n.scalar) * k[n.left]; break;
      case ExprKind::Plus: k[i] = k[n.left] + k[n.right]; break;
      case ExprKind::Vee:
      case ExprKind::Wedge: k[i] = std::max(k[n.left], k[n.right]); break;
      case ExprKind::Abs: k[i] = k[n.left]; break;
    }
  }
  return k.back();
}

double Expr::triangle_ceiling() const {
  std::vector<double> c(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const ExprNode& n = nodes_[i];
    switch (n.kind) {
      case ExprKind::Delta: c[i] = 1.0; break;
      case ExprKind::Scale: c[i] = std::abs(n.scalar) * c[n.left]; break;
      case ExprKind::Plus:
      case ExprKind::Vee:
      case ExprKind::Wedge: c[i] = c[n.left] + c[n.right]; break;
      case ExprKind::Abs: c[i] = c[n.left]; break;
    }
  }
  return c.back();
}

int Expr::depth() const {
  std::vector<int> d(nodes_.size(), 0);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const ExprNode& n = nodes_[i];
    if (n.kind == ExprKind::Delta) continue;
    d[i] = 1 + d[n.left];
    if (n.right >= 0) d[i] = std::max(d[i], 1 + d[n.right]);
  }
  return d.back();
}

std::vector<int> Expr::leaf_elements() const {
  std::vector<int> out;
  for (const ExprNode& n : nodes_)
    if (n.kind == ExprKind::Delta) out.push_back(n.element);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::string format_scalar(double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  const FiniteLattice::Ptr& lattice;

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  [[noreturn]] void fail(const std::string& message) {
    raise(ErrorCode::ParseError,
          message + " at offset " + std::to_string(pos));
  }

  void expect(char c) {
    skip_space();
    if (pos >= text.size() || text[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  }

  std::string atom() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
           !std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (start == pos) fail("expected an atom");
    return std::string(text.substr(start, pos - start));
  }

  double number() {
    const std::string tok = atom();
    try {
      std::size_t used = 0;
      double value = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return value;
    } catch (const std::exception&) {
      fail("expected a number, got '" + tok + "'");
    }
  }

  Expr expr() {
    expect('(');
    const std::string head = atom();
    Expr result = [&]() -> Expr {
      if (head == "delta") return Expr::delta(lattice, atom());
      if (head == "scale") {
        double factor = number();
        return expr().scale(factor);
      }
      if (head == "abs") return expr().abs();
      if (head == "plus") {
        Expr a = expr();
        return plus(a, expr());
      }
      if (head == "minus") {
        Expr a = expr();
        return minus(a, expr());
      }
      if (head == "vee") {
        Expr a = expr();
        return vee(a, expr());
      }
      if (head == "wedge") {
        Expr a = expr();
        return wedge(a, expr());
      }
      fail("unknown operator '" + head + "'");
    }();
    expect(')');
    return result;
  }
};

}  // namespace

Expr Expr::parse(const FiniteLattice::Ptr& lattice, std::string_view text) {
  if (!lattice) raise(ErrorCode::ValidationError, "expression needs a lattice");
  Parser parser{text, 0, lattice};
  Expr result = parser.expr();
  parser.skip_space();
  if (parser.pos != text.size())
    raise(ErrorCode::ParseError, "trailing input after expression");
  return result;
}

std::string Expr::to_sexpr() const {
  std::vector<std::string> repr(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const ExprNode& n = nodes_[i];
    switch (n.kind) {
      case ExprKind::Delta:
        repr[i] = "(delta " + lattice_->label(n.element) + ")";
        break;
      case ExprKind::Scale:
        repr[i] = "(scale " + format_scalar(n.scalar) + " " + repr[n.left] + ")";
        break;
      case ExprKind::Plus:
        repr[i] = "(plus " + repr[n.left] + " " + repr[n.right] + ")";
        break;
      case ExprKind::Vee:
        repr[i] = "(vee " + repr[n.left] + " " + repr[n.right] + ")";
        break;
      case ExprKind::Wedge:
        repr[i] = "(wedge " + repr[n.left] + " " + repr[n.right] + ")";
        break;
      case ExprKind::Abs:
        repr[i] = "(abs " + repr[n.left] + ")";
        break;
    }
  }
  return repr.back();
}

void LatticeMap::validate() const {
  if (!source || !target)
    raise(ErrorCode::ValidationError, "lattice map needs both lattices");
  if (static_cast<int>(mapping.size()) != source->size())
    raise(ErrorCode::DimensionMismatch, "mapping length != source size");
  for (int x : mapping)
    if (x < 0 || x >= target->size())
      raise(ErrorCode::ValidationError, "mapping image out of range");
  for (int a = 0; a < source->size(); ++a)
    for (int b = a; b < source->size(); ++b) {
      if (mapping[source->meet(a, b)] != target->meet(mapping[a], mapping[b]))
        raise(ErrorCode::NotAHomomorphism,
              "meet not preserved at (" + source->label(a) + ", " +
                  source->label(b) + ")");
      if (mapping[source->join(a, b)] != target->join(mapping[a], mapping[b]))
        raise(ErrorCode::NotAHomomorphism,
              "join not preserved at (" + source->label(a) + ", " +
                  source->label(b) + ")");
    }
  if (bounded) {
    if (mapping[source->min_index()] != target->min_index())
      raise(ErrorCode::NotAHomomorphism, "minimum not sent to minimum");
    if (mapping[source->max_index()] != target->max_index())
      raise(ErrorCode::NotAHomomorphism, "maximum not sent to maximum");
  }
}

LatticeMap LatticeMap::identity(const FiniteLattice::Ptr& lattice) {
  LatticeMap map;
  map.source = lattice;
  map.target = lattice;
  map.mapping.resize(lattice->size());
  for (int i = 0; i < lattice->size(); ++i) map.mapping[i] = i;
  return map;
}

LatticeMap compose(const LatticeMap& second, const LatticeMap& first) {
  if (first.target != second.source)
    raise(ErrorCode::LatticeMismatch, "maps do not compose");
  LatticeMap map;
  map.source = first.source;
  map.target = second.target;
  map.bounded = first.bounded && second.bounded;
  map.mapping.resize(first.mapping.size());
  for (std::size_t i = 0; i < first.mapping.size(); ++i)
    map.mapping[i] = second.mapping[first.mapping[i]];
  return map;
}

Expr precompose(const Expr& expr, const LatticeMap& map) {
  map.validate();
  if (expr.lattice() != map.source)
    raise(ErrorCode::LatticeMismatch,
          "expression is not bound to the map's source lattice");
  Expr out;
  out.lattice_ = map.target;
  out.nodes_.assign(expr.nodes().begin(), expr.nodes().end());
  for (ExprNode& n : out.nodes_)
    if (n.kind == ExprKind::Delta) n.element = map.mapping[n.element];
  return out;
}

}  // namespace fbl
