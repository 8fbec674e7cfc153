#include "k3/field.hpp"

#include <stdexcept>

namespace k3 {

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p < 3 || p >= (1u << 31) || !is_prime(p)) throw std::invalid_argument("PrimeField: p must be an odd prime below 2^31");
}

Fp PrimeField::pow(Fp a, std::uint64_t e) const {
  Fp r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Fp PrimeField::inv(Fp a) const {
  if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
  return pow(a, p_ - 2);
}

Fp PrimeField::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  return static_cast<Fp>(r < 0 ? r + p_ : r);
}

bool PrimeField::is_square(Fp a) const { return a == 0 || pow(a, (p_ - 1) / 2) == 1; }

std::optional<Fp> PrimeField::sqrt(Fp a) const {
  if (a == 0) return Fp{0};
  if (!is_square(a)) return std::nullopt;
  if (p_ % 4 == 3) return pow(a, (p_ + 1) / 4);
  // Tonelli-Shanks
  std::uint32_t q = p_ - 1, s = 0;
  while (q % 2 == 0) q /= 2, ++s;
  Fp z = 2;
  while (is_square(z)) ++z;
  Fp c = pow(z, q), x = pow(a, (q + 1) / 2), t = pow(a, q);
  std::uint32_t m = s;
  while (t != 1) {
    std::uint32_t i = 0;
    Fp tt = t;
    while (tt != 1) tt = mul(tt, tt), ++i;
    Fp b = c;
    for (std::uint32_t j = 0; j + i + 1 < m; ++j) b = mul(b, b);
    x = mul(x, b);
    c = mul(b, b);
    t = mul(t, c);
    m = i;
  }
  return x;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

Rng Rng::split(std::uint64_t stream) const { return Rng(splitmix64(seed_ ^ splitmix64(stream + 0x632be59bd9b4e019ULL))); }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: empty range");
  // rejection keeps the draw exactly uniform and independent of the std library
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return x % n;
}

std::vector<Fp> Rng::vector(const PrimeField& f, std::size_t n) {
  std::vector<Fp> v(n);
  for (auto& x : v) x = element(f);
  return v;
}

}  // namespace k3
