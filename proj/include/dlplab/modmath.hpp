#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dlplab {

// Modular arithmetic on 64-bit operands. Subgroup orders q are at most 64
// bits; intermediate products go through 128-bit arithmetic.

inline uint64_t add_mod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) + b) % m);
}

inline uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t m) {
  uint64_t bm = b % m;
  a %= m;
  return a >= bm ? a - bm : a + (m - bm);
}

inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m);

// Inverse of a modulo prime m; throws std::domain_error when gcd(a, m) != 1.
uint64_t inv_mod(uint64_t a, uint64_t m);

// Deterministic Miller-Rabin, valid for every n < 2^64.
bool is_prime_u64(uint64_t n);

// Unsigned integer wide enough for subgroup cofactors (2^eta - 1)/q, which
// reach ~1000 bits for the throughput-benchmark fields. Little-endian 64-bit
// words, no leading zero words except for the single zero word of 0.
struct BigUint {
  std::vector<uint64_t> words;

  BigUint() : words{0} {}
  explicit BigUint(uint64_t v) : words{v} {}

  bool is_zero() const { return words.size() == 1 && words[0] == 0; }
  unsigned bit_length() const;
  bool bit(unsigned i) const {
    unsigned w = i / 64;
    return w < words.size() && ((words[w] >> (i % 64)) & 1u);
  }
  void trim();

  bool operator==(const BigUint& other) const { return words == other.words; }

  std::string to_hex() const;
  static BigUint from_hex(const std::string& hex);
};

// Quotient and remainder of (2^eta - 1) / d for a 64-bit divisor.
struct MersenneDiv {
  BigUint quotient;
  uint64_t remainder;
};
MersenneDiv divide_mersenne(unsigned eta, uint64_t d);

}  // namespace dlplab
