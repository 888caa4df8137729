// Small dense matrices over GF(2), dimension <= 32, one row per machine word.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace kerdock {

constexpr int kMaxMatrixDim = 32;

// Row j is a bit mask; bit k of row j is entry (j, k).
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(int dim);
  static BitMatrix identity(int dim);

  int dim() const { return dim_; }
  int get(int j, int k) const { return static_cast<int>((rows_[j] >> k) & 1u); }
  void set(int j, int k, int v);
  std::uint32_t row(int j) const { return rows_[j]; }
  void set_row(int j, std::uint32_t r);

  BitMatrix transpose() const;
  BitMatrix operator*(const BitMatrix& o) const;
  BitMatrix operator^(const BitMatrix& o) const;
  // x^T M as a row vector.
  std::uint32_t left_mul(std::uint32_t x) const;
  // x^T M z mod 2.
  int bilinear(std::uint32_t x, std::uint32_t z) const;

  int rank() const;
  std::optional<BitMatrix> inverse() const;
  bool is_symmetric() const;

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
    return a.dim_ == b.dim_ && a.rows_ == b.rows_;
  }

 private:
  int dim_ = 0;
  std::array<std::uint32_t, kMaxMatrixDim> rows_{};
};

// Symmetric binary matrix; construction rejects asymmetric input.
class SymMatGF2 {
 public:
  SymMatGF2() = default;
  explicit SymMatGF2(int dim) : m_(dim) {}
  explicit SymMatGF2(const BitMatrix& m);

  int dim() const { return m_.dim(); }
  int get(int j, int k) const { return m_.get(j, k); }
  // Sets both (j,k) and (k,j).
  void set(int j, int k, int v);
  std::uint32_t row(int j) const { return m_.row(j); }
  std::uint32_t diagonal() const;
  const BitMatrix& matrix() const { return m_; }
  int rank() const { return m_.rank(); }

  // y^T Q y over Z4, reading the 0/1 entries as integers.
  int quad_form_z4(std::uint32_t y) const;

  // Hex rows joined by '.', e.g. "3.1".
  std::string to_rows_hex() const;
  static SymMatGF2 from_rows_hex(int dim, const std::string& text);

  friend SymMatGF2 operator^(const SymMatGF2& a, const SymMatGF2& b) {
    return SymMatGF2(a.m_ ^ b.m_);
  }
  friend bool operator==(const SymMatGF2& a, const SymMatGF2& b) = default;

 private:
  BitMatrix m_;
};

}  // namespace kerdock
