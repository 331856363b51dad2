#include "nilcert/field.hpp"

namespace nilcert {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

FieldSpec make_field(std::uint64_t p) {
  if (p >= (1ull << 32)) throw error("field: characteristic too large (must be < 2^32)");
  if (!is_prime(p)) throw error("field: characteristic " + std::to_string(p) + " is not prime");
  return FieldSpec{p};
}

std::uint64_t FieldSpec::order_of(std::uint64_t a) const {
  a %= p;
  if (a == 0) throw error("field: zero has no multiplicative order");
  std::uint64_t k = 1, x = a;
  while (x != 1) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

std::uint64_t FieldSpec::primitive_root_of_order(std::uint64_t k) const {
  if (k == 0 || (p - 1) % k != 0)
    throw error("field: no element of order " + std::to_string(k) + " in F_" + std::to_string(p));
  for (std::uint64_t a = 1; a < p; ++a) {
    if (pow(a, k) != 1) continue;
    if (order_of(a) == k) return a;
  }
  throw error("field: no element of order " + std::to_string(k));  // unreachable for valid k
}

}  // namespace nilcert
