#include "lva/coefficients.hpp"

#include <charconv>

#include "lva/errors.hpp"

namespace lva {

namespace {

long long parse_modulus(std::string_view text, std::string_view token) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError("ring token '" + std::string(token) + "': modulus is not an integer");
  }
  return value;
}

Integer mod_floor(const Integer& a, long long n) {
  Integer r = a % Integer(static_cast<long>(n));
  if (r < 0) r += static_cast<long>(n);
  return r;
}

}  // namespace

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Integer binomial(long long n, long long k) {
  if (k < 0) return 0;
  Integer num = 1;
  for (long long i = 0; i < k; ++i) num *= static_cast<long>(n - i);
  return num / factorial(k);
}

Integer factorial(long long n) {
  Integer f = 1;
  for (long long i = 2; i <= n; ++i) f *= static_cast<long>(i);
  return f;
}

std::size_t hash_value(const Rational& q) {
  std::size_t h = mpz_get_ui(q.get_num_mpz_t());
  h = h * 1000003u ^ static_cast<std::size_t>(mpz_sgn(q.get_num_mpz_t()) + 1);
  h = h * 1000003u ^ mpz_get_ui(q.get_den_mpz_t());
  return h;
}

Ring Ring::rationals() { return Ring(RingKind::rationals, 0); }

Ring Ring::integers() { return Ring(RingKind::integers, 0); }

Ring Ring::prime_field(long long p) {
  if (!is_prime(p)) throw InputError("Fp:" + std::to_string(p) + " requires a prime modulus");
  return Ring(RingKind::prime_field, p);
}

Ring Ring::modular(long long n) {
  if (n < 2) throw InputError("Zn:" + std::to_string(n) + " requires n >= 2");
  return Ring(RingKind::modular, n);
}

Ring Ring::parse(std::string_view token) {
  if (token == "Q") return rationals();
  if (token == "Z") return integers();
  if (token.starts_with("Fp:")) return prime_field(parse_modulus(token.substr(3), token));
  if (token.starts_with("Zn:")) return modular(parse_modulus(token.substr(3), token));
  throw InputError("unknown ring token '" + std::string(token) + "' (expected Q, Z, Fp:<p>, Zn:<n>)");
}

std::string Ring::token() const {
  switch (kind_) {
    case RingKind::rationals:
      return "Q";
    case RingKind::integers:
      return "Z";
    case RingKind::prime_field:
      return "Fp:" + std::to_string(modulus_);
    case RingKind::modular:
      return "Zn:" + std::to_string(modulus_);
  }
  return "?";
}

RingElement Ring::reduce(Integer n) const {
  if (is_finite()) return RingElement(Rational(mod_floor(n, modulus_)));
  return RingElement(Rational(std::move(n)));
}

RingElement Ring::from_integer(const Integer& n) const { return reduce(n); }

std::optional<RingElement> Ring::try_specialize(const Rational& q) const {
  switch (kind_) {
    case RingKind::rationals:
      return RingElement(q);
    case RingKind::integers:
      if (q.get_den() != 1) return std::nullopt;
      return RingElement(q);
    case RingKind::prime_field:
    case RingKind::modular: {
      Integer den = mod_floor(q.get_den(), modulus_);
      Integer inv;
      Integer mod(static_cast<long>(modulus_));
      if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0) return std::nullopt;
      return reduce(q.get_num() * inv);
    }
  }
  return std::nullopt;
}

RingElement Ring::specialize(const Rational& q) const {
  auto r = try_specialize(q);
  if (!r) {
    throw SpecializationError("cannot map " + q.get_str() + " into " + token() +
                              ": denominator is not a unit");
  }
  return *r;
}

RingElement Ring::add(const RingElement& a, const RingElement& b) const {
  if (is_finite()) return reduce(a.value().get_num() + b.value().get_num());
  return RingElement(a.value() + b.value());
}

RingElement Ring::sub(const RingElement& a, const RingElement& b) const {
  if (is_finite()) return reduce(a.value().get_num() - b.value().get_num());
  return RingElement(a.value() - b.value());
}

RingElement Ring::negate(const RingElement& a) const {
  if (is_finite()) return reduce(-a.value().get_num());
  return RingElement(-a.value());
}

RingElement Ring::mul(const RingElement& a, const RingElement& b) const {
  if (is_finite()) return reduce(a.value().get_num() * b.value().get_num());
  return RingElement(a.value() * b.value());
}

RingElement Ring::pow(const RingElement& a, long long e) const {
  RingElement base = e < 0 ? inverse(a) : a;
  if (e < 0) e = -e;
  RingElement result = one();
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

bool Ring::is_unit(const RingElement& a) const {
  switch (kind_) {
    case RingKind::rationals:
      return sgn(a.value()) != 0;
    case RingKind::integers:
      return abs(a.value()) == 1;
    case RingKind::prime_field:
    case RingKind::modular: {
      Integer g;
      Integer mod(static_cast<long>(modulus_));
      Integer num = a.value().get_num();
      mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), mod.get_mpz_t());
      return g == 1;
    }
  }
  return false;
}

RingElement Ring::inverse(const RingElement& a) const {
  if (!is_unit(a)) throw DomainError(format(a) + " is not a unit in " + token());
  if (is_finite()) return specialize(Rational(1) / a.value());
  return RingElement(Rational(1) / a.value());
}

RingElement Ring::divide(const RingElement& a, const RingElement& b) const {
  return mul(a, inverse(b));
}

std::vector<RingElement> Ring::mu2_elements() const {
  if (!is_finite()) return {one(), from_int(-1)};
  if (kind_ == RingKind::prime_field) {
    if (modulus_ == 2) return {one()};
    return {one(), from_int(-1)};
  }
  if (modulus_ > 10'000'000) {
    throw DomainError("mu2 enumeration for " + token() + " exceeds the brute-force limit");
  }
  std::vector<RingElement> out;
  for (long long x = 1; x < modulus_; ++x) {
    // x*x fits: x < 1e7.
    if ((x * x) % modulus_ == 1 % modulus_) out.push_back(from_int(x));
  }
  return out;
}

bool Ring::contains(const Rational& q) const {
  switch (kind_) {
    case RingKind::rationals:
      return true;
    case RingKind::integers:
      return q.get_den() == 1;
    case RingKind::prime_field:
    case RingKind::modular:
      return q.get_den() == 1 && q >= 0 && q < static_cast<long>(modulus_);
  }
  return false;
}

std::string Ring::format(const RingElement& a) const { return a.value().get_str(); }

std::vector<RingElement> mu2_elements(const Ring& ring) { return ring.mu2_elements(); }

bool is_unit(const Ring& ring, const RingElement& x) { return ring.is_unit(x); }

}  // namespace lva
