#include "dlplab/modmath.hpp"

#include <algorithm>
#include <stdexcept>

#include "dlplab/errors.hpp"

namespace dlplab {

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 1) return 0;
  uint64_t result = 1;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

uint64_t inv_mod(uint64_t a, uint64_t m) {
  // extended Euclid on signed 128-bit accumulators
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::domain_error("inv_mod: argument not invertible");
  if (t < 0) t += m;
  return static_cast<uint64_t>(t);
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is deterministic for all n < 2^64 (Sorenson & Webster).
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

unsigned BigUint::bit_length() const {
  for (size_t w = words.size(); w-- > 0;) {
    if (words[w]) return static_cast<unsigned>(64 * w + 64 - __builtin_clzll(words[w]));
  }
  return 0;
}

void BigUint::trim() {
  while (words.size() > 1 && words.back() == 0) words.pop_back();
}

std::string BigUint::to_hex() const {
  static const char digits[] = "0123456789abcdef";
  unsigned bits = bit_length();
  if (bits == 0) return "0";
  unsigned nibbles = (bits + 3) / 4;
  std::string out(nibbles, '0');
  for (unsigned i = 0; i < nibbles; ++i) {
    unsigned pos = (nibbles - 1 - i) * 4;
    unsigned w = pos / 64, off = pos % 64;
    out[i] = digits[(words[w] >> off) & 0xf];
  }
  return out;
}

BigUint BigUint::from_hex(const std::string& hex) {
  if (hex.empty()) throw FormatError("empty hex integer");
  BigUint v;
  v.words.assign((hex.size() * 4 + 63) / 64, 0);
  for (size_t i = 0; i < hex.size(); ++i) {
    char c = hex[i];
    unsigned d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw FormatError(std::string("invalid hex digit '") + c + "'");
    unsigned pos = static_cast<unsigned>((hex.size() - 1 - i) * 4);
    v.words[pos / 64] |= static_cast<uint64_t>(d) << (pos % 64);
  }
  v.trim();
  return v;
}

MersenneDiv divide_mersenne(unsigned eta, uint64_t d) {
  if (d == 0) throw std::domain_error("division by zero");
  // Long division of the eta-bit all-ones integer, MSB first.
  BigUint q;
  q.words.assign((eta + 63) / 64, 0);
  unsigned __int128 rem = 0;
  for (unsigned i = eta; i-- > 0;) {
    rem = (rem << 1) | 1u;  // every bit of 2^eta - 1 is one
    if (rem >= d) {
      rem -= d;
      q.words[i / 64] |= 1ull << (i % 64);
    }
  }
  q.trim();
  return {q, static_cast<uint64_t>(rem)};
}

}  // namespace dlplab
