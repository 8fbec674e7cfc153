#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace k3 {

using Fp = std::uint32_t;

bool is_prime(std::uint64_t v);

/// Arithmetic modulo an odd prime below 2^31.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p = 10007);

  std::uint32_t p() const { return p_; }

  Fp add(Fp a, Fp b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Fp sub(Fp a, Fp b) const { return a >= b ? a - b : a + p_ - b; }
  Fp neg(Fp a) const { return a == 0 ? 0 : p_ - a; }
  Fp mul(Fp a, Fp b) const { return static_cast<Fp>((static_cast<std::uint64_t>(a) * b) % p_); }
  Fp pow(Fp a, std::uint64_t e) const;
  Fp inv(Fp a) const;  // throws on zero
  Fp from_int(std::int64_t v) const;
  /// Symmetric lift to (-p/2, p/2].
  std::int64_t lift(Fp a) const { return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a; }

  bool is_square(Fp a) const;
  /// Some square root of a, or nothing if a is a non-residue.
  std::optional<Fp> sqrt(Fp a) const;

 private:
  std::uint32_t p_;
};

/// Seeded, splittable generator: a child stream is a pure function of
/// (parent seed, stream id), so witnesses are reproducible bit for bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  Rng split(std::uint64_t stream) const;

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n);
  Fp element(const PrimeField& f) { return static_cast<Fp>(below(f.p())); }
  Fp nonzero(const PrimeField& f) { return static_cast<Fp>(1 + below(f.p() - 1)); }
  std::vector<Fp> vector(const PrimeField& f, std::size_t n);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace k3
