#include "dlplab/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "dlplab/errors.hpp"
#include "dlplab/rng.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define DLPLAB_X86_CLMUL 1
#include <wmmintrin.h>
#include <smmintrin.h>
#endif

namespace dlplab {

namespace {

size_t words_for_bits(unsigned bits) { return (bits + 63) / 64; }

void mask_top(std::span<uint64_t> w, unsigned bits) {
  unsigned off = bits % 64;
  if (off) w[w.size() - 1] &= (1ull << off) - 1;
}

}  // namespace

namespace detail {

void clmul64_portable(uint64_t a, uint64_t b, uint64_t& lo, uint64_t& hi) {
  lo = 0;
  hi = 0;
  while (b) {
    unsigned k = static_cast<unsigned>(std::countr_zero(b));
    b &= b - 1;
    lo ^= a << k;
    hi ^= k ? a >> (64 - k) : 0;
  }
}

#ifdef DLPLAB_X86_CLMUL
__attribute__((target("pclmul,sse4.1"))) static void clmul64_hw(uint64_t a, uint64_t b,
                                                                uint64_t& lo, uint64_t& hi) {
  __m128i va = _mm_set_epi64x(0, static_cast<long long>(a));
  __m128i vb = _mm_set_epi64x(0, static_cast<long long>(b));
  __m128i prod = _mm_clmulepi64_si128(va, vb, 0x00);
  lo = static_cast<uint64_t>(_mm_cvtsi128_si64(prod));
  hi = static_cast<uint64_t>(_mm_extract_epi64(prod, 1));
}
#endif

using ClmulFn = void (*)(uint64_t, uint64_t, uint64_t&, uint64_t&);

static ClmulFn resolve_clmul() {
#ifdef DLPLAB_X86_CLMUL
  if (__builtin_cpu_supports("pclmul") && __builtin_cpu_supports("sse4.1")) return clmul64_hw;
#endif
  return clmul64_portable;
}

static const ClmulFn g_clmul = resolve_clmul();

void clmul64(uint64_t a, uint64_t b, uint64_t& lo, uint64_t& hi) { g_clmul(a, b, lo, hi); }

bool clmul_is_hw() { return g_clmul != static_cast<ClmulFn>(clmul64_portable); }

}  // namespace detail

FieldElement FieldElement::zero(unsigned eta) {
  if (eta == 0) throw std::invalid_argument("field degree must be positive");
  FieldElement e;
  e.eta_ = eta;
  e.w_.assign(words_for_bits(eta), 0);
  return e;
}

FieldElement FieldElement::one(unsigned eta) {
  FieldElement e = zero(eta);
  e.w_[0] = 1;
  return e;
}

FieldElement FieldElement::monomial(unsigned eta, unsigned i) {
  if (i >= eta) throw std::invalid_argument("monomial degree out of range");
  FieldElement e = zero(eta);
  e.set_bit(i);
  return e;
}

bool FieldElement::is_zero() const {
  for (uint64_t w : w_)
    if (w) return false;
  return true;
}

bool FieldElement::is_one() const {
  if (w_.empty() || w_[0] != 1) return false;
  for (size_t i = 1; i < w_.size(); ++i)
    if (w_[i]) return false;
  return true;
}

FieldElement add(const FieldElement& a, const FieldElement& b) {
  if (a.eta() != b.eta()) throw std::invalid_argument("add: mismatched field degrees");
  FieldElement out = a;
  auto ow = out.words_mut();
  auto bw = b.words();
  for (size_t i = 0; i < ow.size(); ++i) ow[i] ^= bw[i];
  return out;
}

namespace {

// XOR the 64-bit chunk `w` into `p` at signed bit offset `s`. Callers
// guarantee that no set bit of `w` lands below bit 0.
inline void xor_shifted(uint64_t* p, uint64_t w, long s) {
  long q = s >> 6;  // floor division
  unsigned r = static_cast<unsigned>(s & 63);
  if (r == 0) {
    p[q] ^= w;
  } else {
    if (q >= 0) p[q] ^= w << r;
    p[q + 1] ^= w >> (64 - r);
  }
}

// Reduce the carry-less product in p (np words, degree <= 2*eta-2) modulo f.
// Each word of bits at or above eta is folded down through f's term list;
// the inner retry loop absorbs folds that cascade back into the same word.
void reduce_in_place(uint64_t* p, size_t np, const IrreduciblePoly& f) {
  const unsigned eta = f.degree;
  const size_t eta_word = eta / 64;
  const unsigned eta_off = eta % 64;
  for (size_t j = np; j-- > eta_word;) {
    for (;;) {
      uint64_t w = p[j];
      if (j == eta_word && eta_off != 0) w &= ~0ull << eta_off;
      if (!w) break;
      p[j] ^= w;
      long base = static_cast<long>(64 * j) - static_cast<long>(eta);
      for (unsigned e : f.low_terms) xor_shifted(p, w, base + static_cast<long>(e));
    }
  }
}

void check_mul_args(const FieldElement& a, const FieldElement& b, const IrreduciblePoly& f) {
  if (a.eta() != b.eta() || a.eta() != f.degree)
    throw std::invalid_argument("mul: mismatched field degrees");
}

}  // namespace

void mul_into(FieldElement& out, const FieldElement& a, const FieldElement& b,
              const IrreduciblePoly& f) {
  check_mul_args(a, b, f);
  const size_t nw = a.word_count();
  auto aw = a.words();
  auto bw = b.words();

  if (nw == 1) {
    uint64_t lo, hi;
    detail::clmul64(aw[0], bw[0], lo, hi);
    uint64_t p[2] = {lo, hi};
    reduce_in_place(p, 2, f);
    if (out.eta() != a.eta()) out = FieldElement::zero(a.eta());
    out.words_mut()[0] = p[0];
    return;
  }

  static thread_local std::vector<uint64_t> prod;
  prod.assign(2 * nw, 0);
  for (size_t i = 0; i < nw; ++i) {
    if (!aw[i]) continue;
    for (size_t j = 0; j < nw; ++j) {
      if (!bw[j]) continue;
      uint64_t lo, hi;
      detail::clmul64(aw[i], bw[j], lo, hi);
      prod[i + j] ^= lo;
      prod[i + j + 1] ^= hi;
    }
  }
  reduce_in_place(prod.data(), prod.size(), f);
  if (out.eta() != a.eta()) out = FieldElement::zero(a.eta());
  std::copy(prod.begin(), prod.begin() + nw, out.words_mut().begin());
}

FieldElement mul(const FieldElement& a, const FieldElement& b, const IrreduciblePoly& f) {
  FieldElement out;
  mul_into(out, a, b, f);
  return out;
}

void mul_by_x_into(FieldElement& a, const IrreduciblePoly& f) {
  if (a.eta() != f.degree) throw std::invalid_argument("mul_by_x: mismatched field degrees");
  auto w = a.words_mut();
  uint64_t carry = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    uint64_t next = w[i] >> 63;
    w[i] = (w[i] << 1) | carry;
    carry = next;
  }
  const size_t ew = f.degree / 64;
  const unsigned eo = f.degree % 64;
  bool overflow = ew < w.size() ? ((w[ew] >> eo) & 1u) : (carry & 1u);
  if (overflow) {
    if (ew < w.size()) w[ew] ^= 1ull << eo;
    for (unsigned e : f.low_terms) w[e / 64] ^= 1ull << (e % 64);
  }
}

FieldElement pow(const FieldElement& a, uint64_t e, const IrreduciblePoly& f) {
  if (a.is_zero()) throw std::domain_error("pow: zero is outside the unit group");
  FieldElement result = FieldElement::one(a.eta());
  FieldElement base = a;
  while (e) {
    if (e & 1) mul_into(result, result, base, f);
    mul_into(base, base, base, f);
    e >>= 1;
  }
  return result;
}

FieldElement pow(const FieldElement& a, const BigUint& e, const IrreduciblePoly& f) {
  if (a.is_zero()) throw std::domain_error("pow: zero is outside the unit group");
  FieldElement result = FieldElement::one(a.eta());
  FieldElement base = a;
  unsigned bits = e.bit_length();
  for (unsigned i = 0; i < bits; ++i) {
    if (e.bit(i)) mul_into(result, result, base, f);
    mul_into(base, base, base, f);
  }
  return result;
}

// ---- irreducibility ----

namespace {

unsigned poly_degree(std::span<const uint64_t> p) {
  for (size_t w = p.size(); w-- > 0;) {
    if (p[w]) return static_cast<unsigned>(64 * w + 63 - std::countl_zero(p[w]));
  }
  return 0;  // the zero polynomial is not expected here
}

bool poly_is_zero(std::span<const uint64_t> p) {
  for (uint64_t w : p)
    if (w) return false;
  return true;
}

void poly_xor_shifted(std::vector<uint64_t>& a, std::span<const uint64_t> b, unsigned shift) {
  unsigned wo = shift / 64, bo = shift % 64;
  for (size_t i = 0; i < b.size(); ++i) {
    if (!b[i]) continue;
    a[i + wo] ^= b[i] << bo;
    if (bo && i + wo + 1 < a.size()) a[i + wo + 1] ^= b[i] >> (64 - bo);
  }
}

// a mod b, both nonzero bit polynomials.
std::vector<uint64_t> poly_mod(std::vector<uint64_t> a, std::span<const uint64_t> b) {
  unsigned db = poly_degree(b);
  while (!poly_is_zero(a)) {
    unsigned da = poly_degree(a);
    if (da < db) break;
    poly_xor_shifted(a, b, da - db);
  }
  return a;
}

std::vector<uint64_t> poly_gcd(std::vector<uint64_t> a, std::vector<uint64_t> b) {
  while (!poly_is_zero(b)) {
    auto r = poly_mod(std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool poly_is_one(std::span<const uint64_t> p) {
  if (p.empty() || p[0] != 1) return false;
  for (size_t i = 1; i < p.size(); ++i)
    if (p[i]) return false;
  return true;
}

std::vector<unsigned> prime_factors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Squaring modulo a candidate modulus given by its term list. Works in the
// quotient ring whether or not the modulus is irreducible.
struct CandidateCtx {
  unsigned degree;
  std::vector<unsigned> low_terms;
  std::vector<uint64_t> bits;  // degree+1 coefficient bits

  IrreduciblePoly as_modulus() const {
    IrreduciblePoly f;
    f.degree = degree;
    f.low_terms = low_terms;
    f.coeffs = bits;
    return f;
  }
};

void square_mod(std::vector<uint64_t>& a, std::vector<uint64_t>& scratch, const IrreduciblePoly& f) {
  const size_t nw = a.size();
  scratch.assign(2 * nw, 0);
  for (size_t i = 0; i < nw; ++i) {
    if (!a[i]) continue;
    uint64_t lo, hi;
    detail::clmul64(a[i], a[i], lo, hi);
    scratch[2 * i] ^= lo;
    scratch[2 * i + 1] ^= hi;
  }
  reduce_in_place(scratch.data(), scratch.size(), f);
  std::copy(scratch.begin(), scratch.begin() + nw, a.begin());
}

}  // namespace

bool is_irreducible(std::span<const uint64_t> poly, unsigned degree) {
  if (degree < 1) throw std::invalid_argument("is_irreducible: degree must be >= 1");
  if (poly_degree(poly) != degree) throw std::invalid_argument("is_irreducible: degree mismatch");
  if (degree == 1) return true;
  if ((poly[0] & 1u) == 0) return false;  // divisible by x
  unsigned parity = 0;
  for (uint64_t w : poly) parity ^= static_cast<unsigned>(std::popcount(w)) & 1u;
  if (parity == 0) return false;  // root at 1, divisible by x+1

  IrreduciblePoly f;
  f.degree = degree;
  f.coeffs.assign(poly.begin(), poly.end());
  for (unsigned e = 0; e < degree; ++e)
    if ((poly[e / 64] >> (e % 64)) & 1u) f.low_terms.push_back(e);

  auto factors = prime_factors(degree);
  std::vector<unsigned> required;
  for (unsigned p : factors) required.push_back(degree / p);
  std::sort(required.begin(), required.end());

  const size_t nw = words_for_bits(degree);
  std::vector<uint64_t> h(nw, 0), scratch;
  h[0] = 2;  // the polynomial x

  std::vector<uint64_t> fbits(f.coeffs);
  size_t req_pos = 0;
  for (unsigned k = 1; k <= degree; ++k) {
    square_mod(h, scratch, f);  // h = x^(2^k) mod f
    bool must_check = req_pos < required.size() && required[req_pos] == k;
    // Early screening: a gcd hit at small k certifies a factor of degree
    // dividing k, so composite candidates mostly die within a few squarings.
    bool screen = k <= 8 && k < degree;
    if (must_check || screen) {
      std::vector<uint64_t> hx(h);
      hx.resize(fbits.size(), 0);
      hx[0] ^= 2;  // h + x
      if (!poly_is_zero(hx)) {
        auto g = poly_gcd(fbits, std::move(hx));
        if (!poly_is_one(g)) return false;
      } else if (k < degree) {
        return false;  // x^(2^k) = x with k < degree: factors of degree dividing k
      }
      if (must_check) ++req_pos;
    }
  }
  // h must now equal x
  std::vector<uint64_t> x_poly(nw, 0);
  x_poly[0] = 2;
  return h == x_poly;
}

IrreduciblePoly make_irreducible_poly(std::vector<uint64_t> coeff_bits, unsigned degree,
                                      std::optional<PolyKind> kind) {
  if (degree < 1) throw std::invalid_argument("modulus degree must be >= 1");
  size_t need = words_for_bits(degree + 1);
  if (coeff_bits.size() < need) coeff_bits.resize(need, 0);
  if (((coeff_bits[degree / 64] >> (degree % 64)) & 1u) == 0)
    throw std::invalid_argument("modulus must be monic");
  if (poly_degree(coeff_bits) != degree) throw std::invalid_argument("modulus degree mismatch");
  if (!is_irreducible(coeff_bits, degree)) throw std::invalid_argument("modulus is not irreducible");

  IrreduciblePoly f;
  f.degree = degree;
  f.coeffs = std::move(coeff_bits);
  for (unsigned e = 0; e < degree; ++e)
    if ((f.coeffs[e / 64] >> (e % 64)) & 1u) f.low_terms.push_back(e);
  if (kind) {
    if (*kind == PolyKind::sparse && f.term_count() > 5)
      throw std::invalid_argument("sparse modulus must have at most 5 terms");
    f.kind = *kind;
  } else {
    f.kind = f.term_count() <= 5 ? PolyKind::sparse : PolyKind::arbitrary;
  }
  return f;
}

IrreduciblePoly find_irreducible(unsigned eta, PolyKind kind, uint64_t seed) {
  if (eta < 2) throw std::invalid_argument("find_irreducible: eta must be >= 2");
  const size_t nwf = words_for_bits(eta + 1);

  if (kind == PolyKind::sparse) {
    std::vector<uint64_t> cand(nwf, 0);
    auto set = [&](unsigned b) { cand[b / 64] |= 1ull << (b % 64); };
    for (unsigned k = 1; k < eta; ++k) {
      std::fill(cand.begin(), cand.end(), 0);
      set(eta);
      set(k);
      set(0);
      if (is_irreducible(cand, eta)) return make_irreducible_poly(cand, eta, PolyKind::sparse);
    }
    for (unsigned a = 3; a < eta; ++a) {
      for (unsigned b = 2; b < a; ++b) {
        for (unsigned c = 1; c < b; ++c) {
          std::fill(cand.begin(), cand.end(), 0);
          set(eta);
          set(a);
          set(b);
          set(c);
          set(0);
          if (is_irreducible(cand, eta)) return make_irreducible_poly(cand, eta, PolyKind::sparse);
        }
      }
    }
    throw ConfigError("no irreducible trinomial or pentanomial of degree " + std::to_string(eta));
  }

  SplitMix64 rng(seed);
  std::vector<uint64_t> cand(nwf);
  for (;;) {
    for (auto& w : cand) w = rng.next();
    // random coefficients below eta, zero above, monic bit set
    size_t w = eta / 64;
    unsigned off = eta % 64;
    if (off) {
      cand[w] &= (1ull << off) - 1;
      for (size_t i = w + 1; i < nwf; ++i) cand[i] = 0;
    } else {
      for (size_t i = w; i < nwf; ++i) cand[i] = 0;
    }
    cand[w] |= 1ull << off;
    if (is_irreducible(cand, eta)) return make_irreducible_poly(cand, eta, PolyKind::arbitrary);
  }
}

// ---- encoding ----

std::string encode_hex(const FieldElement& a) {
  BigUint v;
  v.words.assign(a.words().begin(), a.words().end());
  v.trim();
  return v.to_hex();
}

FieldElement decode_hex(const std::string& text, unsigned eta) {
  BigUint v = BigUint::from_hex(text);
  if (v.bit_length() > eta)
    throw FormatError("element encoding has coefficients at or above degree " + std::to_string(eta));
  FieldElement e = FieldElement::zero(eta);
  auto w = e.words_mut();
  for (size_t i = 0; i < v.words.size() && i < w.size(); ++i) w[i] = v.words[i];
  return e;
}

std::string encode_poly_hex(const IrreduciblePoly& f) {
  BigUint v;
  v.words = f.coeffs;
  v.trim();
  return v.to_hex();
}

IrreduciblePoly decode_poly_hex(const std::string& text, unsigned eta) {
  BigUint v = BigUint::from_hex(text);
  if (v.bit_length() != eta + 1) throw FormatError("modulus encoding does not have degree " + std::to_string(eta));
  return make_irreducible_poly(v.words, eta);
}

FieldElement random_element(unsigned eta, SplitMix64& rng) {
  FieldElement e = FieldElement::zero(eta);
  auto w = e.words_mut();
  for (auto& word : w) word = rng.next();
  mask_top(w, eta);
  return e;
}

FieldElement random_nonzero(unsigned eta, SplitMix64& rng) {
  for (;;) {
    FieldElement e = random_element(eta, rng);
    if (!e.is_zero()) return e;
  }
}

}  // namespace dlplab
