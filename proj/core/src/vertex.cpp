#include "lva/vertex.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "lva/errors.hpp"

namespace lva {

LatticeVertexAlgebra::LatticeVertexAlgebra(Lattice l)
    : lattice_(std::move(l)), eps_(std::make_shared<const Cocycle>(lattice_)) {}

FockVector LatticeVertexAlgebra::heisenberg_vector(const std::vector<Rational>& b) const {
  return apply_heisenberg(lattice_, b, -1, vacuum());
}

FockVector LatticeVertexAlgebra::mode(const FockVector& u, long long n, const FockVector& v) const {
  FockVector out;
  for (const auto& [su, cu] : u.terms()) {
    for (const auto& [sv, cv] : v.terms()) out.add_scaled(mode(su, n, sv), cu * cv);
  }
  return out;
}

FockVector LatticeVertexAlgebra::mode(const FockState& u, long long n, const FockState& v) const {
  Key key{u, n, v};
  {
    std::shared_lock lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  FockVector result = compute_mode(u, n, v);
  std::unique_lock lock(mu_);
  return cache_.try_emplace(std::move(key), std::move(result)).first->second;
}

std::size_t LatticeVertexAlgebra::cache_size() const {
  std::shared_lock lock(mu_);
  return cache_.size();
}

void LatticeVertexAlgebra::clear_cache() const {
  std::unique_lock lock(mu_);
  cache_.clear();
}

FockVector LatticeVertexAlgebra::translation(const FockVector& u, long long m) const {
  return mode(u, -m - 1, vacuum());
}

namespace {

int max_mode_depth(const FockVector& v) {
  int d = 0;
  for (const auto& [s, c] : v.terms())
    for (const auto& m : s.modes) d = std::max(d, m.depth);
  return d;
}

using Laurent = std::map<long long, FockVector>;  // exponent of z -> coefficient

void add_to(Laurent& series, long long e, const FockVector& x, const Rational& c) {
  if (x.is_zero() || c == 0) return;
  auto& slot = series[e];
  slot.add_scaled(x, c);
  if (slot.is_zero()) series.erase(e);
}

}  // namespace

// Y(u, z) for u = prod_k alpha_{i_k}(-n_k) e_a is the normally ordered product
// of the fields d^{(n_k - 1)} alpha_{i_k}(z) with
//   Y(e_a, z) = exp(sum a(-m) z^m / m) e_a z^a exp(-sum a(m) z^{-m} / m).
// Each field factor is split into its annihilation part (modes j >= 0, acting
// first) and its creation part (modes j < 0, acting last); u_n v is the
// coefficient of z^{-n-1}.
FockVector LatticeVertexAlgebra::compute_mode(const FockState& u, long long n, const FockState& v) const {
  const Lattice& l = lattice_;
  const std::size_t r = l.rank();
  const LatticeVector& a = u.lattice_point;
  const LatticeVector& b = v.lattice_point;
  const LatticeVector target = a + b;
  const long long out_weight = u.weight(l) + v.weight(l) - n - 1;
  if (out_weight < l.norm(target) / 2) return {};

  const long long exponent = -n - 1;
  const long long shift = l.inner(a, b);
  const int sign = eps_->sign(a, b);
  std::vector<Rational> avec(r);
  for (std::size_t i = 0; i < r; ++i) avec[i] = static_cast<long>(a[i]);

  const std::size_t factors = u.modes.size();
  FockVector result;
  for (std::size_t mask = 0; mask < (std::size_t{1} << factors); ++mask) {
    Laurent terms;
    terms[0] = FockVector(v);
    std::vector<Mode> creation;
    for (std::size_t k = 0; k < factors; ++k) {
      const Mode m = u.modes[k];
      if (!(mask >> k & 1)) {
        creation.push_back(m);
        continue;
      }
      // sum_{j>=0} alpha_i(j) C(-j-1, n_k - 1) z^{-j-n_k}
      Laurent next;
      for (const auto& [e, w] : terms) {
        const int maxj = max_mode_depth(w);
        for (int j = 0; j <= maxj; ++j) {
          FockVector x = apply_basis_heisenberg(l, static_cast<std::size_t>(m.index), j, w);
          add_to(next, e - j - m.depth, x, Rational(binomial(-j - 1, m.depth - 1)));
        }
      }
      terms = std::move(next);
      if (terms.empty()) break;
    }
    if (terms.empty()) continue;

    if (!a.is_zero()) {
      int depth = 0;
      for (const auto& [e, w] : terms) depth = std::max(depth, max_mode_depth(w));
      for (int mm = 1; mm <= depth; ++mm) {
        Laurent next;
        for (const auto& [e, w] : terms) {
          FockVector cur = w;
          Rational coef = 1;
          for (long long p = 0; !cur.is_zero(); ++p) {
            add_to(next, e - mm * p, cur, coef);
            cur = apply_heisenberg(l, avec, mm, cur);
            coef *= make_rational(-1, mm * (p + 1));
          }
        }
        terms = std::move(next);
      }
    }

    for (const auto& [e, w] : terms) {
      const long long room = exponent - (e + shift);
      if (room < 0) continue;
      FockVector moved;
      for (const auto& [s, c] : w.terms()) moved.add(FockState(target, s.modes), sign * c);

      // Distribute `room` among the creation factors (d_k >= 0 extra depth)
      // and s_{a, d_E}.
      std::function<void(std::size_t, long long, const FockVector&)> fill = [&](std::size_t k, long long rest,
                                                                                const FockVector& x) {
        if (k == creation.size()) {
          result += apply_s(l, a, rest, x);
          return;
        }
        const Mode m = creation[k];
        for (long long d = 0; d <= rest; ++d) {
          FockVector y = apply_basis_heisenberg(l, static_cast<std::size_t>(m.index), -(d + m.depth), x);
          y *= Rational(binomial(d + m.depth - 1, m.depth - 1));
          fill(k + 1, rest - d, y);
        }
      };
      fill(0, room, moved);
    }
  }
  return result;
}

long long max_weight(const Lattice& l, const FockVector& v) {
  long long w = 0;
  for (const auto& [s, c] : v.terms()) w = std::max(w, s.weight(l));
  return w;
}

namespace {

int parity_sign(long long k) { return (k & 1) ? -1 : 1; }

IdentityResult make_result(std::string name, const FockVector& lhs, const FockVector& rhs) {
  IdentityResult r;
  r.name = std::move(name);
  r.residual = lhs - rhs;
  r.holds = r.residual.is_zero();
  return r;
}

}  // namespace

IdentityResult borcherds_check(const LatticeVertexAlgebra& va, const FockVector& u, const FockVector& v,
                               const FockVector& w, long long r, long long s, long long t) {
  const Lattice& l = va.lattice();
  const long long wu = max_weight(l, u), wv = max_weight(l, v), ww = max_weight(l, w);
  FockVector lhs, rhs;
  for (long long i = 0; (r < 0 || i <= r) && t + i < wu + wv; ++i) {
    lhs.add_scaled(va.mode(va.mode(u, t + i, v), r + s - i, w), Rational(binomial(r, i)));
  }
  for (long long i = 0; (t < 0 || i <= t) && s + i < wv + ww; ++i) {
    rhs.add_scaled(va.mode(u, r + t - i, va.mode(v, s + i, w)), Rational(parity_sign(i) * binomial(t, i)));
  }
  for (long long i = 0; (t < 0 || i <= t) && r + i < wu + ww; ++i) {
    rhs.add_scaled(va.mode(v, s + t - i, va.mode(u, r + i, w)),
                   Rational(-parity_sign(t) * parity_sign(i) * binomial(t, i)));
  }
  return make_result("borcherds", lhs, rhs);
}

IdentityResult commutator_check(const LatticeVertexAlgebra& va, const FockVector& u, const FockVector& v,
                                const FockVector& w, long long m, long long n) {
  const Lattice& l = va.lattice();
  const long long wu = max_weight(l, u), wv = max_weight(l, v);
  FockVector lhs = va.mode(u, m, va.mode(v, n, w)) - va.mode(v, n, va.mode(u, m, w));
  FockVector rhs;
  for (long long k = 0; (m < 0 || k <= m) && k < wu + wv; ++k) {
    rhs.add_scaled(va.mode(va.mode(u, k, v), m + n - k, w), Rational(binomial(m, k)));
  }
  return make_result("commutator", lhs, rhs);
}

IdentityResult skew_symmetry_check(const LatticeVertexAlgebra& va, const FockVector& u, const FockVector& v,
                                   long long n) {
  const Lattice& l = va.lattice();
  const long long wu = max_weight(l, u), wv = max_weight(l, v);
  FockVector lhs = va.mode(v, n, u);
  FockVector rhs;
  for (long long i = 0; n + i < wu + wv; ++i) {
    rhs.add_scaled(va.translation(va.mode(u, n + i, v), i), Rational(parity_sign(n + 1 + i)));
  }
  return make_result("skew-symmetry", lhs, rhs);
}

IdentityResult associativity_check(const LatticeVertexAlgebra& va, const FockVector& u, const FockVector& v,
                                   const FockVector& w, long long m, long long n) {
  const Lattice& l = va.lattice();
  const long long wu = max_weight(l, u), wv = max_weight(l, v), ww = max_weight(l, w);
  FockVector lhs = va.mode(va.mode(u, m, v), n, w);
  FockVector rhs;
  for (long long i = 0; (m < 0 || i <= m) && n + i < wv + ww; ++i) {
    rhs.add_scaled(va.mode(u, m - i, va.mode(v, n + i, w)), Rational(parity_sign(i) * binomial(m, i)));
  }
  for (long long i = 0; (m < 0 || i <= m) && i < wu + ww; ++i) {
    rhs.add_scaled(va.mode(v, m + n - i, va.mode(u, i, w)),
                   Rational(-parity_sign(m) * parity_sign(i) * binomial(m, i)));
  }
  return make_result("associativity", lhs, rhs);
}

std::vector<IdentityResult> auxiliary_identity_checks(const LatticeVertexAlgebra& va, const FockVector& u,
                                                      const FockVector& v, const FockVector& w, long long m,
                                                      long long n) {
  return {commutator_check(va, u, v, w, m, n), skew_symmetry_check(va, u, v, n),
          associativity_check(va, u, v, w, m, n)};
}

ConformalResult conformal_vector(const Lattice& l, const Ring& ring) {
  ConformalResult res;
  const std::size_t r = l.rank();
  const RationalMatrix& ginv = l.gram_inverse();
  const FockVector one = vacuum(l);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      if (ginv(i, j) == 0) continue;
      FockVector x = apply_basis_heisenberg(l, i, -1, apply_basis_heisenberg(l, j, -1, one));
      res.omega.add_scaled(x, ginv(i, j) / 2);
    }
  }
  res.half_charge = make_rational(static_cast<long long>(r), 2);
  res.determinant = l.determinant();
  res.determinant_is_unit = ring.is_unit(ring.specialize(Rational(res.determinant)));

  for (std::size_t i = 0; i < r; ++i) {
    if (!ring.try_specialize(ginv(i, i) / 2)) {
      res.failures.push_back("(G^-1)_{" + std::to_string(i + 1) + "," + std::to_string(i + 1) + "} = " +
                             ginv(i, i).get_str() + " is not in 2R");
    }
    for (std::size_t j = i + 1; j < r; ++j) {
      if (!ring.try_specialize(ginv(i, j))) {
        res.failures.push_back("(G^-1)_{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "} = " +
                               ginv(i, j).get_str() + " is not in R");
      }
    }
  }
  if (!res.determinant_is_unit) {
    res.reason = "det L = " + res.determinant.get_str() + " is not a unit in " + ring.token();
    return res;
  }
  if (!res.failures.empty()) {
    res.reason = "inverse Gram matrix does not specialize into " + ring.token();
    return res;
  }
  auto c = ring.try_specialize(res.half_charge);
  if (!c) {
    res.reason = "half-charge " + res.half_charge.get_str() + " does not specialize into " + ring.token();
    return res;
  }
  res.half_charge_in_ring = *c;
  res.omega_in_ring = specialize(ring, res.omega);
  res.ok = true;
  return res;
}

std::size_t resolve_threads(std::size_t requested) {
  if (requested) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

namespace {

// Runs body(i, record) for i in [0, count) across threads; partial records
// are merged in thread order so the outcome is deterministic.
void parallel_records(std::size_t count, std::size_t threads, CheckRecord& into,
                      const std::function<void(std::size_t, CheckRecord&)>& body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  std::vector<CheckRecord> parts(threads);
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  // Contiguous blocks keep the "first counterexample" in index order.
  const std::size_t block = (count + threads - 1) / std::max<std::size_t>(threads, 1);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t * block; i < std::min(count, (t + 1) * block); ++i) body(i, parts[t]);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (const auto& p : parts) into.merge(p);
}

std::string describe(const std::string& what, const FockVector& residual) {
  return what + ": residual " + residual.str();
}

std::string vec_label(const FockState& s) { return s.str(); }

}  // namespace

VirasoroReport virasoro_check(const LatticeVertexAlgebra& va, const Ring& ring, long long max_mode,
                              long long max_weight_bound, std::size_t threads) {
  VirasoroReport rep;
  const Lattice& l = va.lattice();
  const ConformalResult conf = conformal_vector(l, ring);
  if (!conf.ok) {
    rep.refused = true;
    rep.refusal = conf.reason;
    return rep;
  }
  const FockVector& omega = conf.omega;
  const Rational c = conf.half_charge;
  auto L = [&](long long k, const FockVector& x) { return va.mode(omega, k + 1, x); };
  const auto basis = truncation_basis(l, max_weight_bound);
  threads = resolve_threads(threads);

  parallel_records(basis.size(), threads, rep.bracket, [&](std::size_t idx, CheckRecord& rec) {
    const FockVector v(basis[idx]);
    for (long long m = -max_mode; m <= max_mode; ++m) {
      for (long long n = -max_mode; n <= max_mode; ++n) {
        FockVector lhs = L(m, L(n, v)) - L(n, L(m, v));
        FockVector rhs = make_rational(m - n) * L(m + n, v);
        if (m + n == 0) rhs.add_scaled(v, c * Rational(binomial(m + 1, 3)));
        FockVector diff = lhs - rhs;
        std::ostringstream what;
        what << "[L_" << m << ", L_" << n << "] on " << vec_label(basis[idx]);
        rec.record(diff.is_zero(), describe(what.str(), diff));
      }
    }
  });
  for (const auto& s : basis) {
    const FockVector v(s);
    FockVector diff = L(0, v) - make_rational(s.weight(l)) * v;
    rep.l0_weight.record(diff.is_zero(), describe("L_0 on " + vec_label(s), diff));
    FockVector diff2 = L(-1, v) - va.mode(v, -2, va.vacuum());
    rep.l_minus1_translation.record(diff2.is_zero(), describe("L_{-1} on " + vec_label(s), diff2));
  }
  parallel_records(basis.size(), threads, rep.heisenberg_bracket, [&](std::size_t idx, CheckRecord& rec) {
    const FockVector v(basis[idx]);
    for (std::size_t i = 0; i < l.rank(); ++i) {
      std::vector<Rational> e(l.rank(), Rational(0));
      e[i] = 1;
      const FockVector h = va.heisenberg_vector(e);
      for (long long m = -max_mode; m <= max_mode; ++m) {
        for (long long n = -max_mode; n <= max_mode; ++n) {
          FockVector lhs = va.mode(h, m, L(n, v)) - L(n, va.mode(h, m, v));
          FockVector rhs = make_rational(m) * va.mode(h, m + n, v);
          FockVector diff = lhs - rhs;
          std::ostringstream what;
          what << "[h" << i + 1 << "_" << m << ", L_" << n << "] on " << vec_label(basis[idx]);
          rec.record(diff.is_zero(), describe(what.str(), diff));
        }
      }
    }
  });
  return rep;
}

AxiomSuiteReport axiom_suite(const LatticeVertexAlgebra& va, const AxiomSuiteConfig& cfg) {
  AxiomSuiteReport rep;
  const Lattice& l = va.lattice();
  const auto basis = truncation_basis(l, cfg.max_weight);
  const std::size_t nb = basis.size();
  const long long M = cfg.max_mode;
  const long long span = 2 * M + 1;
  const std::size_t threads = resolve_threads(cfg.threads);
  const FockVector one = va.vacuum();

  for (const auto& s : basis) {
    const FockVector v(s);
    for (long long n = -M; n <= M; ++n) {
      FockVector diff = va.mode(one, n, v) - (n == -1 ? v : FockVector());
      rep.vacuum.record(diff.is_zero(), describe("1_" + std::to_string(n) + " " + vec_label(s), diff));
    }
    for (long long n = -1; n <= M; ++n) {
      FockVector diff = va.mode(v, n, one) - (n == -1 ? v : FockVector());
      rep.creation.record(diff.is_zero(), describe(vec_label(s) + "_" + std::to_string(n) + " 1", diff));
    }
  }

  parallel_records(nb * nb, threads, rep.grading, [&](std::size_t idx, CheckRecord& rec) {
    const FockState& su = basis[idx / nb];
    const FockState& sv = basis[idx % nb];
    for (long long n = -M; n <= M; ++n) {
      FockVector x = va.mode(su, n, sv);
      const long long w = su.weight(l) + sv.weight(l) - n - 1;
      const LatticeVector deg = su.lattice_point + sv.lattice_point;
      bool ok = true;
      for (const auto& [s, c] : x.terms()) ok = ok && s.weight(l) == w && s.lattice_point == deg;
      rec.record(ok, vec_label(su) + "_" + std::to_string(n) + " " + vec_label(sv) + " = " + x.str());
    }
  });

  // (index of u, v, w, then mode indices) for the three-vector families.
  struct Instance {
    std::size_t u, v, w;
    long long p, q, t;
  };
  std::vector<Instance> triples;
  const bool exhaustive = cfg.samples == 0;
  if (exhaustive) {
    triples.reserve(nb * nb * nb);
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < nb; ++j)
        for (std::size_t k = 0; k < nb; ++k) triples.push_back({i, j, k, 0, 0, 0});
  } else {
    std::mt19937_64 rng(cfg.seed);
    for (std::size_t d = 0; d < cfg.samples; ++d) {
      Instance in{rng() % nb, rng() % nb, rng() % nb, 0, 0, 0};
      in.p = static_cast<long long>(rng() % span) - M;
      in.q = static_cast<long long>(rng() % span) - M;
      in.t = static_cast<long long>(rng() % span) - M;
      triples.push_back(in);
    }
  }

  auto label3 = [&](const Instance& in) {
    return "u=" + vec_label(basis[in.u]) + " v=" + vec_label(basis[in.v]) + " w=" + vec_label(basis[in.w]);
  };

  parallel_records(triples.size(), threads, rep.borcherds, [&](std::size_t idx, CheckRecord& rec) {
    const Instance& in = triples[idx];
    const FockVector u(basis[in.u]), v(basis[in.v]), w(basis[in.w]);
    auto run = [&](long long r, long long s, long long t) {
      auto res = borcherds_check(va, u, v, w, r, s, t);
      std::ostringstream what;
      what << label3(in) << " (r,s,t)=(" << r << "," << s << "," << t << ")";
      rec.record(res.holds, describe(what.str(), res.residual));
    };
    if (exhaustive) {
      for (long long r = -M; r <= M; ++r)
        for (long long s = -M; s <= M; ++s)
          for (long long t = -M; t <= M; ++t) run(r, s, t);
    } else {
      run(in.p, in.q, in.t);
    }
  });

  parallel_records(triples.size(), threads, rep.commutator, [&](std::size_t idx, CheckRecord& rec) {
    const Instance& in = triples[idx];
    const FockVector u(basis[in.u]), v(basis[in.v]), w(basis[in.w]);
    auto run = [&](long long m, long long n) {
      auto res = commutator_check(va, u, v, w, m, n);
      std::ostringstream what;
      what << label3(in) << " (m,n)=(" << m << "," << n << ")";
      rec.record(res.holds, describe(what.str(), res.residual));
    };
    if (exhaustive) {
      for (long long m = -M; m <= M; ++m)
        for (long long n = -M; n <= M; ++n) run(m, n);
    } else {
      run(in.p, in.q);
    }
  });

  parallel_records(triples.size(), threads, rep.associativity, [&](std::size_t idx, CheckRecord& rec) {
    const Instance& in = triples[idx];
    const FockVector u(basis[in.u]), v(basis[in.v]), w(basis[in.w]);
    auto run = [&](long long m, long long n) {
      auto res = associativity_check(va, u, v, w, m, n);
      std::ostringstream what;
      what << label3(in) << " (m,n)=(" << m << "," << n << ")";
      rec.record(res.holds, describe(what.str(), res.residual));
    };
    if (exhaustive) {
      for (long long m = -M; m <= M; ++m)
        for (long long n = -M; n <= M; ++n) run(m, n);
    } else {
      run(in.p, in.q);
    }
  });

  parallel_records(nb * nb, threads, rep.skew_symmetry, [&](std::size_t idx, CheckRecord& rec) {
    const FockVector u(basis[idx / nb]), v(basis[idx % nb]);
    for (long long n = -M; n <= M; ++n) {
      auto res = skew_symmetry_check(va, u, v, n);
      rec.record(res.holds, describe("u=" + vec_label(basis[idx / nb]) + " v=" + vec_label(basis[idx % nb]) +
                                         " n=" + std::to_string(n),
                                     res.residual));
    }
  });
  return rep;
}

std::vector<FockVector> zform_generators(const Lattice& l, long long max_weight) {
  std::vector<FockVector> out;
  for (long long w = 0; w <= max_weight; ++w) {
    for (const auto& p : lattice_points_up_to(l, w)) {
      auto span = zform_spanning_set(l, p, w);
      out.insert(out.end(), span.begin(), span.end());
    }
  }
  return out;
}

CheckRecord zform_closure_check(const LatticeVertexAlgebra& va, long long max_weight, long long max_mode,
                                std::size_t samples, std::uint64_t seed) {
  const Lattice& l = va.lattice();
  CheckRecord rec{"zform-closure", "integral-form/closed-under-modes"};
  const auto gens = zform_generators(l, max_weight);
  auto check = [&](std::size_t i, std::size_t j, long long n) {
    FockVector x = va.mode(gens[i], n, gens[j]);
    if (integral_membership(l, x)) {
      rec.record(true);
      return;
    }
    rec.record(false, "(" + gens[i].str() + ")_" + std::to_string(n) + " (" + gens[j].str() + ") = " + x.str() +
                          " is not in the integral span");
  };
  const std::size_t ng = gens.size();
  if (samples == 0) {
    for (std::size_t i = 0; i < ng; ++i)
      for (std::size_t j = 0; j < ng; ++j) {
        const long long top = lva::max_weight(l, gens[i]) + lva::max_weight(l, gens[j]) - 1;
        for (long long n = -max_mode; n <= top; ++n) check(i, j, n);
      }
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < samples; ++k) {
      const std::size_t i = rng() % ng, j = rng() % ng;
      const long long top = lva::max_weight(l, gens[i]) + lva::max_weight(l, gens[j]) - 1;
      check(i, j, -max_mode + static_cast<long long>(rng() % static_cast<std::uint64_t>(top + max_mode + 1)));
    }
  }
  return rec;
}

}  // namespace lva
