#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dlplab/modmath.hpp"
#include "dlplab/rng.hpp"

namespace dlplab {

class SplitMix64;

enum class PolyKind { sparse, arbitrary };

// An element of GF(2^eta) in the polynomial basis: bit i of the packed word
// array is the coefficient of x^i. Bits at positions >= eta stay zero, so
// equality of representations is equality of elements.
class FieldElement {
 public:
  FieldElement() = default;

  static FieldElement zero(unsigned eta);
  static FieldElement one(unsigned eta);
  static FieldElement monomial(unsigned eta, unsigned i);  // x^i

  unsigned eta() const { return eta_; }
  size_t word_count() const { return w_.size(); }
  std::span<const uint64_t> words() const { return w_; }
  std::span<uint64_t> words_mut() { return w_; }

  bool bit(unsigned i) const { return (w_[i / 64] >> (i % 64)) & 1u; }
  void set_bit(unsigned i) { w_[i / 64] |= 1ull << (i % 64); }

  bool is_zero() const;
  bool is_one() const;

  bool operator==(const FieldElement&) const = default;

 private:
  unsigned eta_ = 0;
  std::vector<uint64_t> w_;
};

struct FieldElementHash {
  size_t operator()(const FieldElement& a) const {
    uint64_t h = 0x9e3779b97f4a7c15ull ^ a.eta();
    for (uint64_t w : a.words()) {
      h ^= w;
      h *= 0xff51afd7ed558ccdull;
      h ^= h >> 33;
    }
    return static_cast<size_t>(h);
  }
};

// Monic irreducible modulus of degree eta. `low_terms` lists the exponents of
// the nonzero coefficients below eta in ascending order; the reduction loop is
// driven by that list, which is what makes sparse moduli fast.
struct IrreduciblePoly {
  unsigned degree = 0;
  std::vector<uint64_t> coeffs;  // degree+1 bits, bit `degree` set
  PolyKind kind = PolyKind::arbitrary;
  std::vector<unsigned> low_terms;

  unsigned term_count() const { return static_cast<unsigned>(low_terms.size()) + 1; }
};

// Validates monicity and irreducibility; derives kind when absent (<= 5 terms
// counts as sparse). Throws std::invalid_argument on violation.
IrreduciblePoly make_irreducible_poly(std::vector<uint64_t> coeff_bits, unsigned degree,
                                      std::optional<PolyKind> kind = std::nullopt);

FieldElement add(const FieldElement& a, const FieldElement& b);

FieldElement mul(const FieldElement& a, const FieldElement& b, const IrreduciblePoly& f);
// Aliasing-safe; `out` may be `a` or `b`.
void mul_into(FieldElement& out, const FieldElement& a, const FieldElement& b,
              const IrreduciblePoly& f);
// In-place multiplication by x (one shift plus one conditional fold).
void mul_by_x_into(FieldElement& a, const IrreduciblePoly& f);

// pow(a, 0) = 1; the zero element is outside the unit group and rejected.
FieldElement pow(const FieldElement& a, uint64_t e, const IrreduciblePoly& f);
FieldElement pow(const FieldElement& a, const BigUint& e, const IrreduciblePoly& f);

// Rabin test over GF(2); `poly` holds degree+1 coefficient bits.
bool is_irreducible(std::span<const uint64_t> poly, unsigned degree);

// kind=sparse scans trinomials x^eta + x^k + 1 in ascending k, then
// pentanomials in ascending (a, b, c); kind=arbitrary draws seeded random
// monic polynomials until one passes the irreducibility test.
IrreduciblePoly find_irreducible(unsigned eta, PolyKind kind, uint64_t seed);

// Bit i of the element is bit i of the hexadecimal integer.
std::string encode_hex(const FieldElement& a);
FieldElement decode_hex(const std::string& text, unsigned eta);

std::string encode_poly_hex(const IrreduciblePoly& f);
IrreduciblePoly decode_poly_hex(const std::string& text, unsigned eta);

FieldElement random_element(unsigned eta, SplitMix64& rng);
FieldElement random_nonzero(unsigned eta, SplitMix64& rng);

namespace detail {
// Exposed so tests can pin hardware and portable carry-less products to each
// other; both orderings produce identical results.
void clmul64_portable(uint64_t a, uint64_t b, uint64_t& lo, uint64_t& hi);
void clmul64(uint64_t a, uint64_t b, uint64_t& lo, uint64_t& hi);
bool clmul_is_hw();
}  // namespace detail

}  // namespace dlplab
