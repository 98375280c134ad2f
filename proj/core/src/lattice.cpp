#include "lva/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_set>

#include "lva/errors.hpp"

namespace lva {

bool LatticeVector::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](long long x) { return x == 0; });
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& o) {
  if (o.size() != size()) throw DomainError("lattice vector dimension mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords[i] += o.coords[i];
  return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& o) {
  if (o.size() != size()) throw DomainError("lattice vector dimension mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

std::string LatticeVector::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) os << ',';
    os << coords[i];
  }
  os << ')';
  return os.str();
}

std::optional<GramViolation> gram_violation(const IntMatrix& gram) {
  const std::size_t n = gram.rows();
  if (n == 0 || !gram.square()) return GramViolation{0, "gram matrix must be a non-empty square matrix"};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (gram(i, j) != gram(j, i)) {
        return GramViolation{i, "gram matrix is not symmetric: entry (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ") differs from its transpose"};
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (gram(i, i) % 2 != 0) {
      return GramViolation{i, "lattice is not even: diagonal entry " + std::to_string(i + 1) + " is " +
                                  std::to_string(gram(i, i))};
    }
  }
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = gram(i, j);
    const Integer d = lva::determinant(minor);
    if (d <= 0) {
      return GramViolation{k - 1, "gram matrix is not positive definite: leading minor " + std::to_string(k) +
                                      " = " + d.get_str()};
    }
  }
  return std::nullopt;
}

Lattice::Lattice(std::string name, IntMatrix gram) : name_(std::move(name)), gram_(std::move(gram)) {
  if (auto v = gram_violation(gram_)) throw InputError(v->message);
  det_ = lva::determinant(gram_);
  gram_inverse_ = inverse(to_rational(gram_));
}

namespace {

IntMatrix e8_gram() {
  // Cartan matrix of E8, Bourbaki labelling: 1-3-4-5-6-7-8 with 2 attached to 4.
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
  const std::pair<int, int> edges[] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
  for (auto [a, b] : edges) {
    g(a - 1, b - 1) = -1;
    g(b - 1, a - 1) = -1;
  }
  return g;
}

}  // namespace

Lattice Lattice::preset(std::string_view name) {
  if (name == "A1") return Lattice("A1", IntMatrix{{2}});
  if (name == "A2") return Lattice("A2", IntMatrix{{2, -1}, {-1, 2}});
  if (name == "A1A1") return Lattice("A1A1", IntMatrix{{2, 0}, {0, 2}});
  if (name == "D4") {
    return Lattice("D4", IntMatrix{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}});
  }
  if (name == "E8") return Lattice("E8", e8_gram());
  throw InputError("unknown lattice preset '" + std::string(name) + "'");
}

std::vector<std::string> Lattice::preset_names() { return {"A1", "A2", "A1A1", "D4", "E8"}; }

bool Lattice::is_preset(std::string_view name) {
  auto names = preset_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

long long Lattice::inner(const LatticeVector& x, const LatticeVector& y) const {
  if (x.size() != rank() || y.size() != rank()) throw DomainError("inner: dimension mismatch");
  long long s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    long long row = 0;
    for (std::size_t j = 0; j < rank(); ++j) row += gram_(i, j) * y[j];
    s += x[i] * row;
  }
  return s;
}

Rational Lattice::inner(const std::vector<Rational>& b, const LatticeVector& x) const {
  if (b.size() != rank() || x.size() != rank()) throw DomainError("inner: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (b[i] == 0) continue;
    long long row = 0;
    for (std::size_t j = 0; j < rank(); ++j) row += gram_(i, j) * x[j];
    s += b[i] * static_cast<long>(row);
  }
  return s;
}

bool Lattice::preserves_form(const IntMatrix& m) const {
  if (m.rows() != rank() || m.cols() != rank()) return false;
  return m.transpose() * gram_ * m == gram_;
}

LatticeVector apply(const IntMatrix& m, const LatticeVector& x) {
  if (m.cols() != x.size()) throw DomainError("apply: dimension mismatch");
  LatticeVector y = LatticeVector::zero(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    long long s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

std::vector<LatticeVector> short_vectors(const Lattice& l, long long bound) {
  if (bound < 0) throw DomainError("short_vectors: bound must be non-negative");
  const std::size_t n = l.rank();
  // Exact completion of squares: q(x) = sum_i Q(i,i) (x_i + sum_{j>i} Q(i,j) x_j)^2.
  RationalMatrix q = to_rational(l.gram());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      q(j, i) = q(i, j);
      q(i, j) /= q(i, i);
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t m = k; m < n; ++m) q(k, m) -= q(k, i) * q(i, m);
  }

  std::vector<LatticeVector> out;
  LatticeVector x = LatticeVector::zero(n);
  std::function<void(std::ptrdiff_t, const Rational&)> descend = [&](std::ptrdiff_t i, const Rational& room) {
    if (i < 0) {
      if (!x.is_zero()) out.push_back(x);
      return;
    }
    Rational center = 0;
    for (std::size_t j = i + 1; j < n; ++j) center += q(i, j) * static_cast<long>(x[j]);
    const Rational radius_sq = room / q(i, i);
    auto fits = [&](const Integer& xi) {
      Rational t = Rational(xi) + center;
      return t * t <= radius_sq;
    };
    Integer start;
    Rational neg = -center;
    mpz_fdiv_q(start.get_mpz_t(), neg.get_num_mpz_t(), neg.get_den_mpz_t());
    Integer lo = start, hi = start;
    if (!fits(start)) {
      ++start;
      if (!fits(start)) return;
      lo = hi = start;
    }
    while (fits(lo - 1)) --lo;
    while (fits(hi + 1)) ++hi;
    for (Integer xi = lo; xi <= hi; ++xi) {
      x[i] = xi.get_si();
      Rational t = Rational(xi) + center;
      descend(i - 1, room - q(i, i) * t * t);
    }
    x[i] = 0;
  };
  descend(static_cast<std::ptrdiff_t>(n) - 1, Rational(static_cast<long>(bound)));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LatticeVector> roots(const Lattice& l) {
  auto v = short_vectors(l, 2);
  std::erase_if(v, [&](const LatticeVector& x) { return l.norm(x) != 2; });
  return v;
}

IntMatrix reflection(const Lattice& l, const LatticeVector& a) {
  if (l.norm(a) != 2) throw DomainError("reflection: " + a.str() + " is not a root");
  const std::size_t n = l.rank();
  IntMatrix m = IntMatrix::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    const long long pairing = l.inner(l.basis_vector(j), a);
    for (std::size_t i = 0; i < n; ++i) m(i, j) -= pairing * a[i];
  }
  return m;
}

bool is_positive(const LatticeVector& v) {
  for (long long x : v.coords) {
    if (x != 0) return x > 0;
  }
  return false;
}

std::vector<LatticeVector> simple_roots(const Lattice& l) {
  std::vector<LatticeVector> positive;
  for (auto& r : roots(l)) {
    if (is_positive(r)) positive.push_back(r);
  }
  std::unordered_set<LatticeVector, LatticeVectorHash> pos_set(positive.begin(), positive.end());
  std::vector<LatticeVector> simple;
  for (const auto& r : positive) {
    bool decomposable = false;
    for (const auto& s : positive) {
      LatticeVector rest = r - s;
      if (is_positive(rest) && pos_set.count(rest)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simple.push_back(r);
  }
  return simple;
}

std::size_t default_group_cap() {
  if (const char* env = std::getenv("LVA_GROUP_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultGroupCap;
}

std::vector<CartanComponent> cartan_type(const Lattice& l) {
  const auto simple = simple_roots(l);
  const std::size_t k = simple.size();
  std::vector<std::vector<std::size_t>> adj(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const long long p = l.inner(simple[i], simple[j]);
      if (p == 0) continue;
      if (p != -1) throw DomainError("simple roots with inner product " + std::to_string(p));
      adj[i].push_back(j);
      adj[j].push_back(i);
    }
  }
  std::vector<bool> seen(k, false);
  std::vector<CartanComponent> out;
  for (std::size_t s = 0; s < k; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = true;
    for (std::size_t idx = 0; idx < comp.size(); ++idx) {
      for (auto nb : adj[comp[idx]]) {
        if (!seen[nb]) {
          seen[nb] = true;
          comp.push_back(nb);
        }
      }
    }
    const int nodes = static_cast<int>(comp.size());
    std::size_t edges = 0;
    std::vector<std::size_t> branch;
    for (auto v : comp) {
      edges += adj[v].size();
      if (adj[v].size() > 3) throw DomainError("Dynkin diagram has a node of degree > 3");
      if (adj[v].size() == 3) branch.push_back(v);
    }
    edges /= 2;
    if (edges != comp.size() - 1) throw DomainError("Dynkin diagram contains a cycle");
    if (branch.empty()) {
      out.push_back({'A', nodes});
      continue;
    }
    if (branch.size() > 1) throw DomainError("Dynkin diagram has more than one branch node");
    std::vector<int> arms;
    for (auto start : adj[branch[0]]) {
      int len = 1;
      std::size_t prev = branch[0], cur = start;
      while (adj[cur].size() == 2) {
        std::size_t nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = nxt;
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) {
      out.push_back({'D', nodes});
    } else if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) {
      out.push_back({'E', nodes});
    } else {
      throw DomainError("Dynkin diagram is not of ADE type");
    }
  }
  std::sort(out.begin(), out.end(), [](const CartanComponent& a, const CartanComponent& b) {
    return std::pair(a.type, a.rank) < std::pair(b.type, b.rank);
  });
  return out;
}

Integer weyl_order_from_type(const std::vector<CartanComponent>& type) {
  Integer order = 1;
  for (const auto& c : type) {
    switch (c.type) {
      case 'A':
        order *= factorial(c.rank + 1);
        break;
      case 'D': {
        Integer p2 = 1;
        mpz_mul_2exp(p2.get_mpz_t(), p2.get_mpz_t(), c.rank - 1);
        order *= p2 * factorial(c.rank);
        break;
      }
      case 'E':
        order *= c.rank == 6 ? Integer(51840) : c.rank == 7 ? Integer(2903040) : Integer(696729600);
        break;
      default:
        throw DomainError("unknown Cartan type");
    }
  }
  return order;
}

IntegerMatrixGroup weyl_group(const Lattice& l, std::size_t cap) {
  const Integer predicted = weyl_order_from_type(cartan_type(l));
  if (predicted > Integer(static_cast<unsigned long>(cap))) {
    throw ResourceCapExceeded("Weyl group of " + l.name() + " has order " + predicted.get_str() +
                              ", above the cap of " + std::to_string(cap));
  }
  std::vector<IntMatrix> gens;
  for (const auto& a : simple_roots(l)) gens.push_back(reflection(l, a));
  auto group = IntegerMatrixGroup::closure(std::move(gens), l.rank(), cap);
  if (Integer(static_cast<unsigned long>(group.order())) != predicted) {
    throw DomainError("Weyl group closure order " + std::to_string(group.order()) +
                      " disagrees with the Cartan type prediction " + predicted.get_str());
  }
  return group;
}

IntegerMatrixGroup orthogonal_group(const Lattice& l, std::size_t cap) {
  const std::size_t n = l.rank();
  long long max_norm = 0;
  for (std::size_t i = 0; i < n; ++i) max_norm = std::max(max_norm, l.gram()(i, i));
  std::map<long long, std::vector<LatticeVector>> by_norm;
  for (auto& v : short_vectors(l, max_norm)) by_norm[l.norm(v)].push_back(v);

  std::vector<IntMatrix> elements;
  std::vector<LatticeVector> images(n);
  std::function<void(std::size_t)> extend = [&](std::size_t j) {
    if (j == n) {
      if (elements.size() >= cap) {
        throw ResourceCapExceeded("orthogonal group of " + l.name() + " exceeds the cap of " +
                                  std::to_string(cap) + " elements");
      }
      IntMatrix m(n, n);
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) m(r, c) = images[c][r];
      elements.push_back(std::move(m));
      return;
    }
    for (const auto& v : by_norm[l.gram()(j, j)]) {
      bool ok = true;
      for (std::size_t i = 0; i < j && ok; ++i) ok = l.inner(images[i], v) == l.gram()(i, j);
      if (!ok) continue;
      images[j] = v;
      extend(j + 1);
    }
  };
  extend(0);
  return IntegerMatrixGroup({}, std::move(elements));
}

std::vector<IntMatrix> outer_classes(const IntegerMatrixGroup& weyl, const IntegerMatrixGroup& orthogonal) {
  std::vector<bool> covered(orthogonal.order(), false);
  std::vector<IntMatrix> reps;
  for (std::size_t i = 0; i < orthogonal.order(); ++i) {
    if (covered[i]) continue;
    const auto& g = orthogonal.elements()[i];
    reps.push_back(g);
    for (const auto& w : weyl.elements()) {
      auto idx = orthogonal.index_of(w * g);
      if (idx == IntegerMatrixGroup::npos) throw DomainError("Weyl group is not contained in O(L)");
      covered[idx] = true;
    }
  }
  return reps;
}

long long RootDatum::pairing(const LatticeVector& x, const LatticeVector& coroot) const {
  long long s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) s += x[i] * character_gram(i, j) * coroot[j];
  return s;
}

RootDatum root_datum(const Lattice& l) {
  RootDatum d;
  d.character_gram = l.gram();
  d.roots = roots(l);
  d.cocharacter_gram_inverse = l.gram_inverse();
  d.coroots = d.roots;

  std::unordered_set<LatticeVector, LatticeVectorHash> root_set(d.roots.begin(), d.roots.end());
  for (std::size_t k = 0; k < d.roots.size(); ++k) {
    const auto& a = d.roots[k];
    const auto& av = d.coroots[k];
    if (d.pairing(a, av) != 2) throw DomainError("root datum: <a, a^v> != 2 for " + a.str());
    for (const auto& b : d.roots) {
      // s_a(b) = b - <b, a^v> a
      LatticeVector sb = b - d.pairing(b, av) * a;
      if (!root_set.count(sb)) throw DomainError("root datum: s_a does not permute the roots");
    }
    for (const auto& bv : d.coroots) {
      // s_{a^v}(b^v) = b^v - <a, b^v> a^v
      LatticeVector sbv = bv - d.pairing(a, bv) * av;
      if (!root_set.count(sbv)) throw DomainError("root datum: s_{a^v} does not permute the coroots");
    }
  }
  d.reduced = true;
  for (const auto& a : d.roots) {
    for (const auto& b : d.roots) {
      bool collinear = true;
      for (std::size_t i = 0; i < a.size() && collinear; ++i)
        for (std::size_t j = 0; j < a.size() && collinear; ++j) collinear = a[i] * b[j] == a[j] * b[i];
      if (collinear && b != a && b != -a) d.reduced = false;
    }
  }
  if (!d.reduced) throw DomainError("root datum is not reduced");

  RationalMatrix m(d.roots.size(), l.rank());
  for (std::size_t i = 0; i < d.roots.size(); ++i)
    for (std::size_t j = 0; j < l.rank(); ++j) m(i, j) = static_cast<long>(d.roots[i][j]);
  d.root_span_rank = d.roots.empty() ? 0 : rank(m);
  d.semisimple = d.root_span_rank == l.rank();
  return d;
}

}  // namespace lva
