// Arithmetic in GF(2^n) for 1 <= n <= 24, polynomial basis over a primitive h.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace kerdock {

constexpr int kMaxFieldDegree = 24;

// Bit i holds the coefficient of xi^i.
struct FieldElement {
  std::uint32_t bits = 0;
  friend bool operator==(FieldElement, FieldElement) = default;
};

// h is stored with bit i = h_i, including the leading h_n.
bool is_primitive(std::uint32_t h, int n);
bool is_irreducible(std::uint32_t h, int n);

// Built-in primitive polynomials, entry n-1 for degree n.
std::span<const std::uint32_t> primitive_table();

// "n: h_0 h_1 ... h_n"
std::string format_poly_line(int n, std::uint32_t h);
// Parses one table line; throws std::invalid_argument on malformed input.
std::pair<int, std::uint32_t> parse_poly_line(const std::string& line);

class FieldContext {
 public:
  // Uses the built-in table entry.
  static FieldContext standard(int n);
  // Throws std::invalid_argument unless h is a primitive polynomial of degree n.
  FieldContext(int n, std::uint32_t h);

  int degree() const { return n_; }
  std::uint32_t poly() const { return h_; }
  // h without the leading t^n term; also the coordinates of xi^n.
  std::uint32_t poly_low() const { return h_ & mask_; }
  std::uint32_t size() const { return 1u << n_; }
  std::uint32_t mask() const { return mask_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  FieldElement xi() const;
  FieldElement xi_pow(std::uint64_t e) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement square(FieldElement a) const { return mul(a, a); }
  FieldElement pow(FieldElement a, std::uint64_t e) const;
  // Unique square root, a^(2^(n-1)).
  FieldElement sqrt(FieldElement a) const;
  FieldElement inverse(FieldElement a) const;

  // x + x^2 + ... + x^(2^(n-1)) as a field element; always 0 or 1.
  FieldElement trace_sum(FieldElement a) const;
  int trace(FieldElement a) const;
  // Full trace table, n <= 16 only.
  std::vector<std::uint8_t> trace_table() const;

  bool contains(FieldElement a) const { return (a.bits & ~mask_) == 0; }

  friend bool operator==(const FieldContext& a, const FieldContext& b) {
    return a.n_ == b.n_ && a.h_ == b.h_;
  }

 private:
  void check(FieldElement a) const;
  std::uint32_t mul_raw(std::uint32_t a, std::uint32_t b) const;

  int n_ = 1;
  std::uint32_t h_ = 3;
  std::uint32_t mask_ = 1;
};

}  // namespace kerdock
