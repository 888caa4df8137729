#include "kerdock/field.hpp"

#include <array>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace kerdock {

namespace {

// Smallest primitive polynomial of each degree, except degree 3 which uses
// 1 + t^2 + t^3 so the worked 3-bit Kerdock example comes out of the table.
constexpr std::array<std::uint32_t, kMaxFieldDegree> kPrimitive = {
    0x3,      0x7,      0xd,      0x13,     0x25,      0x43,
    0x83,     0x11d,    0x211,    0x409,    0x805,     0x1053,
    0x201b,   0x402b,   0x8003,   0x1002d,  0x20009,   0x40027,
    0x80027,  0x100009, 0x200005, 0x400003, 0x800021,  0x100001b};

int poly_degree(std::uint64_t p) { return p ? 63 - std::countl_zero(p) : -1; }

// a*b mod h where deg a, deg b < n = deg h; h need not be irreducible.
std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t h, int n) {
  std::uint32_t r = 0;
  const std::uint32_t top = 1u << n;
  while (b) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= h;
  }
  return r;
}

std::uint32_t powmod(std::uint32_t base, std::uint64_t e, std::uint32_t h, int n) {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1u) r = mulmod(r, base, h, n);
    base = mulmod(base, base, h, n);
    e >>= 1;
  }
  return r;
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
  const int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a)) a ^= b << (da - db);
  return a;
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a = poly_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> f;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d) continue;
    f.push_back(d);
    while (m % d == 0) m /= d;
  }
  if (m > 1) f.push_back(m);
  return f;
}

bool well_formed(std::uint32_t h, int n) {
  return n >= 1 && n <= kMaxFieldDegree && poly_degree(h) == n;
}

}  // namespace

bool is_irreducible(std::uint32_t h, int n) {
  if (!well_formed(h, n)) return false;
  if (n == 1) return true;
  if (!(h & 1u)) return false;
  // Ben-Or: no factor of degree i <= n/2 divides t^(2^i) - t.
  std::uint32_t x = 2;
  for (int i = 1; i <= n / 2; ++i) {
    x = mulmod(x, x, h, n);
    if (poly_gcd(h, x ^ 2u) != 1) return false;
  }
  return true;
}

bool is_primitive(std::uint32_t h, int n) {
  if (!is_irreducible(h, n)) return false;
  const std::uint64_t order = (std::uint64_t{1} << n) - 1;
  const std::uint32_t t = n == 1 ? (2u ^ h) : 2u;  // t reduced mod h
  if (powmod(t, order, h, n) != 1) return false;
  for (auto p : prime_factors(order))
    if (powmod(t, order / p, h, n) == 1) return false;
  return true;
}

std::span<const std::uint32_t> primitive_table() { return kPrimitive; }

std::string format_poly_line(int n, std::uint32_t h) {
  std::ostringstream os;
  os << n << ':';
  for (int i = 0; i <= n; ++i) os << ' ' << ((h >> i) & 1u);
  return os.str();
}

std::pair<int, std::uint32_t> parse_poly_line(const std::string& line) {
  std::istringstream is(line);
  int n = 0;
  char colon = 0;
  if (!(is >> n >> colon) || colon != ':' || n < 1 || n > kMaxFieldDegree)
    throw std::invalid_argument("bad polynomial line: " + line);
  std::uint32_t h = 0;
  for (int i = 0; i <= n; ++i) {
    int c = -1;
    if (!(is >> c) || (c != 0 && c != 1))
      throw std::invalid_argument("bad polynomial coefficients: " + line);
    h |= static_cast<std::uint32_t>(c) << i;
  }
  std::string rest;
  if (is >> rest) throw std::invalid_argument("trailing data: " + line);
  return {n, h};
}

FieldContext FieldContext::standard(int n) {
  if (n < 1 || n > kMaxFieldDegree)
    throw std::invalid_argument("field degree out of range: " + std::to_string(n));
  return FieldContext(n, kPrimitive[n - 1]);
}

FieldContext::FieldContext(int n, std::uint32_t h) : n_(n), h_(h) {
  if (!is_primitive(h, n))
    throw std::invalid_argument("not a primitive polynomial of degree " + std::to_string(n));
  mask_ = (1u << n) - 1;
}

void FieldContext::check(FieldElement a) const {
  if (!contains(a)) throw std::invalid_argument("element does not belong to this field");
}

std::uint32_t FieldContext::mul_raw(std::uint32_t a, std::uint32_t b) const {
  return mulmod(a, b, h_, n_);
}

FieldElement FieldContext::xi() const { return {n_ == 1 ? 1u : 2u}; }

FieldElement FieldContext::xi_pow(std::uint64_t e) const { return pow(xi(), e); }

FieldElement FieldContext::add(FieldElement a, FieldElement b) const {
  check(a);
  check(b);
  return {a.bits ^ b.bits};
}

FieldElement FieldContext::mul(FieldElement a, FieldElement b) const {
  check(a);
  check(b);
  return {mul_raw(a.bits, b.bits)};
}

FieldElement FieldContext::pow(FieldElement a, std::uint64_t e) const {
  check(a);
  return {powmod(a.bits, e, h_, n_)};
}

FieldElement FieldContext::sqrt(FieldElement a) const {
  check(a);
  std::uint32_t x = a.bits;
  for (int i = 1; i < n_; ++i) x = mul_raw(x, x);
  return {x};
}

FieldElement FieldContext::inverse(FieldElement a) const {
  check(a);
  if (a.bits == 0) throw std::domain_error("zero has no inverse");
  return pow(a, size() - 2u);
}

FieldElement FieldContext::trace_sum(FieldElement a) const {
  check(a);
  std::uint32_t x = a.bits, acc = a.bits;
  for (int i = 1; i < n_; ++i) {
    x = mul_raw(x, x);
    acc ^= x;
  }
  return {acc};
}

int FieldContext::trace(FieldElement a) const {
  const auto t = trace_sum(a).bits;
  if (t > 1) throw std::logic_error("trace left the prime field");
  return static_cast<int>(t);
}

std::vector<std::uint8_t> FieldContext::trace_table() const {
  if (n_ > 16) throw std::invalid_argument("trace table limited to n <= 16");
  // Trace is linear: tabulate the basis, then fill by parity.
  std::uint32_t tmask = 0;
  for (int i = 0; i < n_; ++i)
    if (trace({1u << i})) tmask |= 1u << i;
  std::vector<std::uint8_t> table(size());
  for (std::uint32_t x = 0; x < size(); ++x)
    table[x] = static_cast<std::uint8_t>(std::popcount(x & tmask) & 1);
  return table;
}

}  // namespace kerdock
