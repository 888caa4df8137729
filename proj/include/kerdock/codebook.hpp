// Second-order Reed-Muller codewords over Z4, Hankel matrices and the Kerdock subset.
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kerdock/bitmatrix.hpp"
#include "kerdock/field.hpp"

namespace kerdock {

using cd = std::complex<double>;

// Hankel matrix stored as its 2n-1 anti-diagonal bits: entry (j,k) = bit j+k.
class HankelMatrix {
 public:
  HankelMatrix() = default;
  HankelMatrix(int n, std::uint64_t diag);

  int dim() const { return n_; }
  std::uint64_t diag() const { return diag_; }
  int entry(int j, int k) const { return static_cast<int>((diag_ >> (j + k)) & 1u); }
  std::uint32_t row(int j) const;
  SymMatGF2 to_sym() const;
  HankelMatrix prefix(int j) const;
  int quad_form_z4(std::uint32_t y) const;

  std::string diag_hex() const;
  static HankelMatrix from_diag_hex(int n, const std::string& hex);

  friend bool operator==(const HankelMatrix&, const HankelMatrix&) = default;
  friend auto operator<=>(const HankelMatrix& a, const HankelMatrix& b) {
    return std::pair(a.n_, a.diag_) <=> std::pair(b.n_, b.diag_);
  }

 private:
  int n_ = 0;
  std::uint64_t diag_ = 0;
};

std::optional<HankelMatrix> as_hankel(const SymMatGF2& q);

// phi_{Q,l,eps}(y) = i^{y^T Q y + 2 l.y + eps} / sqrt(2^n); bit 0 of y is the first coordinate.
struct CodewordLabel {
  SymMatGF2 Q;
  std::uint32_t ell = 0;
  int eps = 0;

  int n() const { return Q.dim(); }
  friend bool operator==(const CodewordLabel&, const CodewordLabel&) = default;
};

CodewordLabel make_label(const HankelMatrix& p, std::uint32_t ell, int eps = 0);

// i^e
cd z4_unit(int e);
int codeword_exponent(const CodewordLabel& label, std::uint32_t y);
cd eval_rm2(const CodewordLabel& label, std::uint32_t y);

// "n;Q=<hex>;l=<hex>;e=<0..3>" where Q is the anti-diagonal hex of a Hankel
// matrix or '.'-separated hex rows of a general symmetric matrix.
std::string format_label(const CodewordLabel& label);
CodewordLabel parse_label(const std::string& text);

// Kerdock matrix from its top row via the recurrence of the field polynomial.
HankelMatrix lf_kerdock(const FieldContext& ctx, std::uint32_t top_row);
// Kerdock matrix with anti-diagonals tr(alpha xi^m).
HankelMatrix trace_kerdock(const FieldContext& ctx, FieldElement alpha);
// All 2^n Kerdock matrices, indexed by top row.
std::vector<HankelMatrix> kerdock_set(const FieldContext& ctx);
// True when the first `bits` anti-diagonal bits obey the recurrence.
bool is_kerdock_prefix(const FieldContext& ctx, std::uint64_t diag, int bits);
// [x]^T P [y z] = [x y]^T P [z] for x, z on the basis and y = xi.
bool check_commute(const FieldContext& ctx, const HankelMatrix& p);

// 0->00, 1->01, 2->11, 3->10
std::pair<int, int> gray_map(int z4);
std::vector<std::uint8_t> gray_map(std::span<const std::uint8_t> word);
// Same map on {1, i, -1, -i}, bits written as +-1.
std::pair<int, int> gray_map_unit(cd unit);
// Binary image of a codeword, index (y << 1) | b for Gray bit b.
std::vector<std::uint8_t> gray_image(const CodewordLabel& label);

// Binary quadratic part of the Gray image: (n+1)x(n+1), zero diagonal.
SymMatGF2 z4_to_z2_label(const SymMatGF2& q);

// <phi_1, phi_2> = sum_y phi_1(y) conj(phi_2(y)), computed exactly.
cd pair_dot(const CodewordLabel& a, const CodewordLabel& b);

}  // namespace kerdock
