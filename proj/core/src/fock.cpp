#include "lva/fock.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>

#include "lva/errors.hpp"
#include "lva/matrix.hpp"

namespace lva {

FockState::FockState(LatticeVector lambda, std::vector<Mode> m) : lattice_point(std::move(lambda)), modes(std::move(m)) {
  std::sort(modes.begin(), modes.end());
}

long long FockState::mode_depth() const {
  long long d = 0;
  for (const auto& m : modes) d += m.depth;
  return d;
}

std::string FockState::str() const {
  std::ostringstream os;
  for (auto it = modes.rbegin(); it != modes.rend(); ++it) os << "a" << it->index + 1 << "(-" << it->depth << ")";
  os << "e" << lattice_point.str();
  return os.str();
}

FockVector::FockVector(const FockState& s, const Rational& c) { add(s, c); }

Rational FockVector::coefficient(const FockState& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Rational(0) : it->second;
}

void FockVector::add(const FockState& s, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void FockVector::add(FockState&& s, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(s);
  if (it == terms_.end()) {
    terms_.emplace(std::move(s), c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void FockVector::add_scaled(const FockVector& v, const Rational& c) {
  if (c == 0) return;
  for (const auto& [s, x] : v.terms_) add(s, c * x);
}

FockVector& FockVector::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [s, x] : terms_) x *= c;
  }
  return *this;
}

bool FockVector::is_lattice_homogeneous() const {
  if (terms_.empty()) return true;
  const auto& first = terms_.begin()->first.lattice_point;
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first.lattice_point == first; });
}

bool FockVector::is_weight_homogeneous(const Lattice& l) const {
  if (terms_.empty()) return true;
  const long long w = terms_.begin()->first.weight(l);
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first.weight(l) == w; });
}

void FockVector::assert_bidegree(const Lattice& l, const LatticeVector& lambda, long long weight) const {
  for (const auto& [s, c] : terms_) {
    if (s.lattice_point != lambda || s.weight(l) != weight) {
      throw DomainError("vector is not homogeneous of bidegree (" + lambda.str() + ", " + std::to_string(weight) +
                        "): contains " + s.str());
    }
  }
}

std::string FockVector::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rational a = abs(c);
    if (a != 1) os << a << "*";
    os << s.str();
  }
  return os.str();
}

FockVector lattice_vector(const LatticeVector& lambda) { return FockVector(FockState(lambda)); }

FockVector vacuum(const Lattice& l) { return lattice_vector(l.zero()); }

std::map<FockState, RingElement> specialize(const Ring& ring, const FockVector& v) {
  std::map<FockState, RingElement> out;
  for (const auto& [s, c] : v.terms()) {
    RingElement x = ring.specialize(c);
    if (!ring.is_zero(x)) out.emplace(s, x);
  }
  return out;
}

namespace {

// alpha_i(-depth) applied to one state.
FockState with_mode(const FockState& s, Mode m) {
  FockState t = s;
  t.modes.insert(std::upper_bound(t.modes.begin(), t.modes.end(), m), m);
  return t;
}

}  // namespace

FockVector apply_heisenberg(const Lattice& l, const std::vector<Rational>& b, long long n, const FockVector& v) {
  const std::size_t r = l.rank();
  if (b.size() != r) throw DomainError("heisenberg: dimension mismatch");
  FockVector out;
  if (n < 0) {
    for (const auto& [s, c] : v.terms()) {
      for (std::size_t i = 0; i < r; ++i) {
        if (b[i] == 0) continue;
        out.add(with_mode(s, Mode{static_cast<int>(-n), static_cast<int>(i)}), c * b[i]);
      }
    }
    return out;
  }
  if (n == 0) {
    for (const auto& [s, c] : v.terms()) out.add(s, c * l.inner(b, s.lattice_point));
    return out;
  }
  // <b, alpha_i> for each i.
  std::vector<Rational> pairing(r);
  for (std::size_t i = 0; i < r; ++i) pairing[i] = l.inner(b, l.basis_vector(i));
  for (const auto& [s, c] : v.terms()) {
    for (std::size_t k = 0; k < s.modes.size(); ++k) {
      const Mode m = s.modes[k];
      if (m.depth != n) continue;
      if (k > 0 && s.modes[k - 1] == m) continue;  // count each distinct mode once
      long long mult = 0;
      for (std::size_t j = k; j < s.modes.size() && s.modes[j] == m; ++j) ++mult;
      const Rational f = pairing[m.index] * static_cast<long>(n * mult);
      if (f == 0) continue;
      FockState t = s;
      t.modes.erase(t.modes.begin() + static_cast<std::ptrdiff_t>(k));
      out.add(std::move(t), c * f);
    }
  }
  return out;
}

FockVector apply_basis_heisenberg(const Lattice& l, std::size_t i, long long n, const FockVector& v) {
  std::vector<Rational> b(l.rank(), Rational(0));
  b.at(i) = 1;
  return apply_heisenberg(l, b, n, v);
}

std::vector<std::pair<std::vector<int>, Rational>> s_polynomial(long long n) {
  if (n < 0) throw DomainError("s_{a,n} requires n >= 0");
  std::vector<std::pair<std::vector<int>, Rational>> out;
  std::vector<int> parts;
  // Partitions of n into parts listed in nonincreasing order.
  std::function<void(long long, int)> rec = [&](long long rest, int max_part) {
    if (rest == 0) {
      Rational coeff = 1;
      for (std::size_t i = 0; i < parts.size();) {
        std::size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        const long m = static_cast<long>(j - i);
        Integer denom = factorial(m);
        Integer kp;
        mpz_ui_pow_ui(kp.get_mpz_t(), static_cast<unsigned long>(parts[i]), static_cast<unsigned long>(m));
        coeff /= Rational(denom * kp);
        i = j;
      }
      out.emplace_back(parts, coeff);
      return;
    }
    for (int k = static_cast<int>(std::min<long long>(rest, max_part)); k >= 1; --k) {
      parts.push_back(k);
      rec(rest - k, k);
      parts.pop_back();
    }
  };
  rec(n, static_cast<int>(n));
  return out;
}

FockVector apply_s(const Lattice& l, const LatticeVector& a, long long n, const FockVector& v) {
  std::vector<Rational> b(l.rank());
  for (std::size_t i = 0; i < l.rank(); ++i) b[i] = static_cast<long>(a[i]);
  FockVector out;
  for (const auto& [parts, coeff] : s_polynomial(n)) {
    FockVector w = v;
    for (int k : parts) w = apply_heisenberg(l, b, -k, w);
    out.add_scaled(w, coeff);
  }
  return out;
}

namespace {

// Multisets of modes with total depth `depth`, nondecreasing in (depth, index).
void enumerate_modes(std::size_t rank, long long depth, std::vector<std::vector<Mode>>& out) {
  std::vector<Mode> cur;
  std::function<void(long long, Mode)> rec = [&](long long rest, Mode min_mode) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int d = min_mode.depth; d <= rest; ++d) {
      for (int i = d == min_mode.depth ? min_mode.index : 0; i < static_cast<int>(rank); ++i) {
        cur.push_back(Mode{d, i});
        rec(rest - d, Mode{d, i});
        cur.pop_back();
      }
    }
  };
  rec(depth, Mode{1, 0});
}

}  // namespace

GradedPieceBasis graded_piece(const Lattice& l, const LatticeVector& lambda, long long weight) {
  GradedPieceBasis g{lambda, weight, {}};
  const long long depth = weight - l.norm(lambda) / 2;
  if (depth < 0) return g;
  std::vector<std::vector<Mode>> mode_sets;
  enumerate_modes(l.rank(), depth, mode_sets);
  for (auto& m : mode_sets) g.states.emplace_back(lambda, std::move(m));
  std::sort(g.states.begin(), g.states.end());
  return g;
}

std::vector<LatticeVector> lattice_points_up_to(const Lattice& l, long long max_weight) {
  std::vector<LatticeVector> pts{l.zero()};
  if (max_weight > 0) {
    auto sv = short_vectors(l, 2 * max_weight);
    pts.insert(pts.end(), sv.begin(), sv.end());
  }
  return pts;
}

std::vector<FockState> weight_basis(const Lattice& l, long long weight) {
  std::vector<FockState> out;
  auto pts = lattice_points_up_to(l, weight);
  std::sort(pts.begin(), pts.end());
  for (const auto& p : pts) {
    auto g = graded_piece(l, p, weight);
    out.insert(out.end(), g.states.begin(), g.states.end());
  }
  return out;
}

std::vector<FockState> truncation_basis(const Lattice& l, long long max_weight) {
  std::vector<FockState> out;
  for (long long w = 0; w <= max_weight; ++w) {
    auto b = weight_basis(l, w);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

std::vector<FockVector> zform_spanning_set(const Lattice& l, const LatticeVector& lambda, long long weight,
                                           long long depth_bound) {
  const long long total = weight - l.norm(lambda) / 2;
  if (total < 0) throw DomainError("zform_spanning_set: weight below the lowest weight of the sector");
  if (depth_bound < 0) depth_bound = 2 * weight;
  std::vector<LatticeVector> gens;
  for (std::size_t j = 0; j < l.rank(); ++j) {
    gens.push_back(l.basis_vector(j));
    gens.push_back(-l.basis_vector(j));
  }
  if (!lambda.is_zero() && std::find(gens.begin(), gens.end(), lambda) == gens.end()) gens.push_back(lambda);

  std::vector<FockVector> out;
  const FockVector top = lattice_vector(lambda);
  // Multisets of (generator, n) pairs, nondecreasing in (n, generator index).
  std::vector<std::pair<long long, std::size_t>> chosen;
  std::function<void(long long, long long, std::size_t)> rec = [&](long long rest, long long min_n, std::size_t min_g) {
    if (rest == 0) {
      FockVector v = top;
      for (const auto& [n, g] : chosen) v = apply_s(l, gens[g], n, v);
      if (!v.is_zero()) out.push_back(std::move(v));
      return;
    }
    if (static_cast<long long>(chosen.size()) >= depth_bound) return;
    for (long long n = min_n; n <= rest; ++n) {
      for (std::size_t g = n == min_n ? min_g : 0; g < gens.size(); ++g) {
        chosen.emplace_back(n, g);
        rec(rest - n, n, g);
        chosen.pop_back();
      }
    }
  };
  rec(total, 1, 0);
  return out;
}

namespace {

struct ZFormData {
  std::vector<FockState> basis;
  std::map<FockState, std::size_t> index;
  Integer denominator;  // common denominator of the spanning set
  IntegerMatrix hnf;    // HNF of denominator * spanning rows
  std::size_t rank = 0;
};

using ZFormKey = std::tuple<std::vector<long long>, std::vector<long long>, long long, long long>;

const ZFormData& zform_data(const Lattice& l, const LatticeVector& lambda, long long weight, long long depth_bound) {
  static std::mutex mu;
  static std::map<ZFormKey, ZFormData> cache;
  ZFormKey key{l.gram().data(), lambda.coords, weight, depth_bound};
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  ZFormData d;
  d.basis = graded_piece(l, lambda, weight).states;
  for (std::size_t i = 0; i < d.basis.size(); ++i) d.index.emplace(d.basis[i], i);
  const auto span = zform_spanning_set(l, lambda, weight, depth_bound);
  d.denominator = 1;
  for (const auto& v : span)
    for (const auto& [s, c] : v.terms()) mpz_lcm(d.denominator.get_mpz_t(), d.denominator.get_mpz_t(), c.get_den_mpz_t());
  IntegerMatrix rows(span.size(), d.basis.size());
  for (std::size_t r = 0; r < span.size(); ++r) {
    for (const auto& [s, c] : span[r].terms()) {
      Rational scaled = c * Rational(d.denominator);
      rows(r, d.index.at(s)) = scaled.get_num();
    }
  }
  d.hnf = hermite_normal_form(std::move(rows));
  d.rank = d.hnf.rows();
  std::lock_guard lock(mu);
  return cache.emplace(std::move(key), std::move(d)).first->second;
}

}  // namespace

bool integral_membership(const Lattice& l, const FockVector& v, const LatticeVector& lambda, long long weight,
                         long long depth_bound) {
  v.assert_bidegree(l, lambda, weight);
  if (v.is_zero()) return true;
  const ZFormData& d = zform_data(l, lambda, weight, depth_bound);
  std::vector<Integer> target(d.basis.size());
  for (const auto& [s, c] : v.terms()) {
    Rational scaled = c * Rational(d.denominator);
    if (scaled.get_den() != 1) return false;  // denominator beyond the common one of the span
    target[d.index.at(s)] = scaled.get_num();
  }
  return in_row_lattice(d.hnf, target);
}

bool integral_membership(const Lattice& l, const FockVector& v) {
  std::map<std::pair<LatticeVector, long long>, FockVector> parts;
  for (const auto& [s, c] : v.terms()) parts[{s.lattice_point, s.weight(l)}].add(s, c);
  for (const auto& [deg, part] : parts) {
    if (!integral_membership(l, part, deg.first, deg.second)) return false;
  }
  return true;
}

bool zform_rank_saturated(const Lattice& l, const LatticeVector& lambda, long long weight) {
  const ZFormData& d = zform_data(l, lambda, weight, -1);
  return d.rank == d.basis.size();
}

std::vector<Integer> colored_partitions(std::size_t colors, long long max_n) {
  std::vector<Integer> p(static_cast<std::size_t>(max_n + 1), Integer(0));
  p[0] = 1;
  for (std::size_t c = 0; c < colors; ++c) {
    for (long long k = 1; k <= max_n; ++k) {
      for (long long n = k; n <= max_n; ++n) p[n] += p[n - k];
    }
  }
  return p;
}

std::vector<Integer> theta_coefficients(const Lattice& l, long long max_n) {
  std::vector<Integer> theta(static_cast<std::size_t>(max_n + 1), Integer(0));
  theta[0] = 1;
  if (max_n > 0) {
    for (const auto& v : short_vectors(l, 2 * max_n)) theta[l.norm(v) / 2] += 1;
  }
  return theta;
}

Integer graded_dimension(const Lattice& l, long long weight) {
  if (weight < 0) throw DomainError("graded_dimension: negative weight");
  const auto theta = theta_coefficients(l, weight);
  const auto p = colored_partitions(l.rank(), weight);
  Integer dim = 0;
  for (long long k = 0; k <= weight; ++k) dim += theta[k] * p[weight - k];
  return dim;
}

}  // namespace lva
