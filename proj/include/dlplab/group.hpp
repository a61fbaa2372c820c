#pragma once

#include <optional>
#include <span>
#include <string>

#include "dlplab/gf2.hpp"
#include "dlplab/modmath.hpp"

namespace dlplab {

// A prime-order subgroup of GF(2^eta)^x: q * cofactor = 2^eta - 1, q prime,
// g of order exactly q.
struct GroupParams {
  unsigned eta = 0;
  IrreduciblePoly f;
  uint64_t q = 0;
  BigUint cofactor;
  FieldElement g;
};

// A discrete-logarithm instance h = g^x. The secret is retained only so tests
// and solvers can verify their answers.
struct DlpInstance {
  GroupParams params;
  FieldElement h;
  std::optional<uint64_t> x_hidden;
};

// Built-in (eta, q) pairs with known factorizations. Every entry is
// re-verified (primality, divisibility) when parameters are built from it.
struct CataloguePair {
  unsigned eta;
  uint64_t q;
};
std::span<const CataloguePair> subgroup_catalogue();
std::optional<uint64_t> catalogue_q(unsigned eta);

// g = u^cofactor for random nonzero u, retried until g != 1. With q prime the
// order of any such g is exactly q.
FieldElement derive_generator(unsigned eta, const IrreduciblePoly& f, uint64_t q,
                              const BigUint& cofactor, uint64_t seed);

// Builds and validates a full parameter set. q must divide 2^eta - 1.
GroupParams make_group_params(unsigned eta, PolyKind kind, uint64_t q, uint64_t seed);

DlpInstance make_instance(const GroupParams& params, uint64_t seed);
DlpInstance make_instance_with_x(const GroupParams& params, uint64_t x);

// First failed check as a diagnostic, or nullopt when everything holds.
std::optional<std::string> validate(const GroupParams& params);

// Line-oriented key=value parameter files. Keys: eta, f, q, cofactor, g, h,
// x (optional). f, cofactor, g, h are hex; eta, q, x decimal. Unknown keys
// are rejected.
std::string params_to_text(const DlpInstance& inst);
DlpInstance params_from_text(const std::string& text);
void write_params_file(const std::string& path, const DlpInstance& inst);
DlpInstance read_params_file(const std::string& path);

}  // namespace dlplab
