#ifndef NILCERT_FIELD_HPP
#define NILCERT_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nilcert {

/// Error type for contract violations (bad input, precondition failures).
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Prime field F_p. Scalars are canonical residues in [0, p).
/// p is capped below 2^32 so products fit in uint64 without overflow.
struct FieldSpec {
  std::uint64_t p = 2;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p - b;
  }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }

  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  std::uint64_t inv(std::uint64_t a) const {
    if (a % p == 0) throw error("field: division by zero mod " + std::to_string(p));
    return pow(a, p - 2);
  }

  /// Canonical residue of a signed integer.
  std::uint64_t canon(long long v) const {
    long long m = static_cast<long long>(p);
    long long r = v % m;
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
  }

  /// Multiplicative order of a (a != 0).
  std::uint64_t order_of(std::uint64_t a) const;

  /// Smallest element of exact multiplicative order k, if any.
  /// Exists iff k divides p-1.
  std::uint64_t primitive_root_of_order(std::uint64_t k) const;

  bool operator==(const FieldSpec&) const = default;
};

bool is_prime(std::uint64_t n);

/// Validates primality and the size cap.
FieldSpec make_field(std::uint64_t p);

}  // namespace nilcert

#endif
