#include "dlplab/group.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "dlplab/errors.hpp"
#include "dlplab/rng.hpp"

namespace dlplab {

namespace {

// 2^2-1 = 3 and 2^3-1 = 7, 2^17-1, 2^19-1, 2^31-1 are prime;
// 2^11-1 = 23 * 89; 2^31-1 divides 2^1023-1 since 31 | 1023.
constexpr std::array<CataloguePair, 7> kCatalogue{{
    {2, 3},
    {3, 7},
    {11, 89},
    {17, 131071},
    {19, 524287},
    {31, 2147483647},
    {1023, 2147483647},
}};

}  // namespace

std::span<const CataloguePair> subgroup_catalogue() { return kCatalogue; }

std::optional<uint64_t> catalogue_q(unsigned eta) {
  for (const auto& p : kCatalogue)
    if (p.eta == eta) return p.q;
  return std::nullopt;
}

FieldElement derive_generator(unsigned eta, const IrreduciblePoly& f, uint64_t q,
                              const BigUint& cofactor, uint64_t seed) {
  if (!is_prime_u64(q)) throw std::invalid_argument("derive_generator: q not prime");
  SplitMix64 rng(seed);
  for (;;) {
    FieldElement u = random_nonzero(eta, rng);
    FieldElement g = pow(u, cofactor, f);
    if (!g.is_one()) return g;
  }
}

GroupParams make_group_params(unsigned eta, PolyKind kind, uint64_t q, uint64_t seed) {
  SplitMix64 root(seed);
  GroupParams p;
  p.eta = eta;
  p.q = q;
  auto div = divide_mersenne(eta, q);
  if (div.remainder != 0)
    throw ConfigError("q = " + std::to_string(q) + " does not divide 2^" + std::to_string(eta) + " - 1");
  p.cofactor = div.quotient;
  p.f = find_irreducible(eta, kind, root.next());
  p.g = derive_generator(eta, p.f, q, p.cofactor, root.next());
  if (auto diag = validate(p)) throw ConfigError("generated parameters invalid: " + *diag);
  return p;
}

DlpInstance make_instance(const GroupParams& params, uint64_t seed) {
  SplitMix64 rng(seed);
  return make_instance_with_x(params, rng.in_range(1, params.q - 1));
}

DlpInstance make_instance_with_x(const GroupParams& params, uint64_t x) {
  if (x < 1 || x >= params.q) throw std::invalid_argument("instance secret x outside [1, q-1]");
  DlpInstance inst;
  inst.params = params;
  inst.h = pow(params.g, x, params.f);
  inst.x_hidden = x;
  return inst;
}

std::optional<std::string> validate(const GroupParams& params) {
  if (!is_prime_u64(params.q)) return "q not prime";
  auto div = divide_mersenne(params.eta, params.q);
  if (div.remainder != 0) return "q does not divide 2^eta - 1";
  if (!(div.quotient == params.cofactor)) return "cofactor does not equal (2^eta - 1)/q";
  if (params.f.degree != params.eta) return "modulus degree mismatch";
  if (!is_irreducible(params.f.coeffs, params.f.degree)) return "modulus not irreducible";
  if (params.g.eta() != params.eta) return "generator field mismatch";
  if (params.g.is_zero() || params.g.is_one()) return "generator trivial";
  if (!pow(params.g, params.q, params.f).is_one()) return "generator order does not divide q";
  return std::nullopt;
}

std::string params_to_text(const DlpInstance& inst) {
  std::ostringstream out;
  out << "eta=" << inst.params.eta << "\n";
  out << "f=" << encode_poly_hex(inst.params.f) << "\n";
  out << "q=" << inst.params.q << "\n";
  out << "cofactor=" << inst.params.cofactor.to_hex() << "\n";
  out << "g=" << encode_hex(inst.params.g) << "\n";
  out << "h=" << encode_hex(inst.h) << "\n";
  if (inst.x_hidden) out << "x=" << *inst.x_hidden << "\n";
  return out.str();
}

namespace {

uint64_t parse_u64(const std::string& s, const char* key) {
  uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw FormatError(std::string("invalid integer for key '") + key + "'");
  return v;
}

}  // namespace

DlpInstance params_from_text(const std::string& text) {
  static const char* kKeys[] = {"eta", "f", "q", "cofactor", "g", "h", "x"};
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("parameter line without '=': " + line);
    std::string key = line.substr(0, eq);
    bool known = false;
    for (const char* k : kKeys) known |= key == k;
    if (!known) throw FormatError("unknown parameter key '" + key + "'");
    if (kv.count(key)) throw FormatError("duplicate parameter key '" + key + "'");
    kv[key] = line.substr(eq + 1);
  }
  for (const char* k : {"eta", "f", "q", "cofactor", "g", "h"})
    if (!kv.count(k)) throw FormatError(std::string("missing parameter key '") + k + "'");

  DlpInstance inst;
  unsigned eta = static_cast<unsigned>(parse_u64(kv["eta"], "eta"));
  inst.params.eta = eta;
  inst.params.f = decode_poly_hex(kv["f"], eta);
  inst.params.q = parse_u64(kv["q"], "q");
  inst.params.cofactor = BigUint::from_hex(kv["cofactor"]);
  inst.params.g = decode_hex(kv["g"], eta);
  inst.h = decode_hex(kv["h"], eta);

  if (auto diag = validate(inst.params)) throw FormatError("invalid parameters: " + *diag);
  if (!pow(inst.h, inst.params.q, inst.params.f).is_one())
    throw FormatError("invalid parameters: h not in the subgroup");
  if (kv.count("x")) {
    uint64_t x = parse_u64(kv["x"], "x");
    if (x < 1 || x >= inst.params.q) throw FormatError("invalid parameters: x outside [1, q-1]");
    if (!(pow(inst.params.g, x, inst.params.f) == inst.h))
      throw FormatError("invalid parameters: x does not match h");
    inst.x_hidden = x;
  }
  return inst;
}

void write_params_file(const std::string& path, const DlpInstance& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open parameter file for writing: " + path);
  out << params_to_text(inst);
}

DlpInstance read_params_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open parameter file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return params_from_text(buf.str());
}

}  // namespace dlplab
