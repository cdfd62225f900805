#pragma once

#include <cstdint>

#include "galforms/errors.hpp"

namespace galforms {

bool is_prime(std::uint64_t p);

/// GF(p) with residues stored as integers in [0, p).
class PrimeField {
 public:
  using Scalar = std::uint32_t;

  explicit PrimeField(std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }

  Scalar zero() const { return 0; }
  Scalar one() const { return 1; }
  Scalar add(Scalar a, Scalar b) const { return static_cast<Scalar>((a + b) % p_); }
  Scalar sub(Scalar a, Scalar b) const { return static_cast<Scalar>((a + p_ - b) % p_); }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const {
    return static_cast<Scalar>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Scalar inv(Scalar a) const;
  bool is_zero(Scalar a) const { return a == 0; }

 private:
  std::uint32_t p_;
};

}  // namespace galforms
