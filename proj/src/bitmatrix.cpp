#include "kerdock/bitmatrix.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace kerdock {

BitMatrix::BitMatrix(int dim) : dim_(dim) {
  if (dim < 0 || dim > kMaxMatrixDim) throw std::invalid_argument("matrix dimension out of range");
}

BitMatrix BitMatrix::identity(int dim) {
  BitMatrix m(dim);
  for (int j = 0; j < dim; ++j) m.rows_[j] = 1u << j;
  return m;
}

void BitMatrix::set(int j, int k, int v) {
  if (v & 1)
    rows_[j] |= 1u << k;
  else
    rows_[j] &= ~(1u << k);
}

void BitMatrix::set_row(int j, std::uint32_t r) {
  const std::uint32_t mask = dim_ == 32 ? ~0u : (1u << dim_) - 1;
  if (r & ~mask) throw std::invalid_argument("row has bits beyond the dimension");
  rows_[j] = r;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(dim_);
  for (int j = 0; j < dim_; ++j)
    for (int k = 0; k < dim_; ++k)
      if (get(j, k)) t.rows_[k] |= 1u << j;
  return t;
}

std::uint32_t BitMatrix::left_mul(std::uint32_t x) const {
  std::uint32_t r = 0;
  for (; x; x &= x - 1) r ^= rows_[std::countr_zero(x)];
  return r;
}

BitMatrix BitMatrix::operator*(const BitMatrix& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
  BitMatrix r(dim_);
  for (int j = 0; j < dim_; ++j) r.rows_[j] = o.left_mul(rows_[j]);
  return r;
}

BitMatrix BitMatrix::operator^(const BitMatrix& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
  BitMatrix r(dim_);
  for (int j = 0; j < dim_; ++j) r.rows_[j] = rows_[j] ^ o.rows_[j];
  return r;
}

int BitMatrix::bilinear(std::uint32_t x, std::uint32_t z) const {
  return std::popcount(left_mul(x) & z) & 1;
}

int BitMatrix::rank() const {
  auto rows = rows_;
  int r = 0;
  for (int col = 0; col < dim_ && r < dim_; ++col) {
    int piv = -1;
    for (int j = r; j < dim_; ++j)
      if ((rows[j] >> col) & 1u) {
        piv = j;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    for (int j = 0; j < dim_; ++j)
      if (j != r && ((rows[j] >> col) & 1u)) rows[j] ^= rows[r];
    ++r;
  }
  return r;
}

std::optional<BitMatrix> BitMatrix::inverse() const {
  auto a = rows_;
  auto inv = identity(dim_).rows_;
  for (int col = 0; col < dim_; ++col) {
    int piv = -1;
    for (int j = col; j < dim_; ++j)
      if ((a[j] >> col) & 1u) {
        piv = j;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(a[col], a[piv]);
    std::swap(inv[col], inv[piv]);
    for (int j = 0; j < dim_; ++j)
      if (j != col && ((a[j] >> col) & 1u)) {
        a[j] ^= a[col];
        inv[j] ^= inv[col];
      }
  }
  BitMatrix r(dim_);
  r.rows_ = inv;
  return r;
}

bool BitMatrix::is_symmetric() const { return transpose() == *this; }

SymMatGF2::SymMatGF2(const BitMatrix& m) : m_(m) {
  if (!m.is_symmetric()) throw std::invalid_argument("matrix is not symmetric");
}

void SymMatGF2::set(int j, int k, int v) {
  m_.set(j, k, v);
  m_.set(k, j, v);
}

std::uint32_t SymMatGF2::diagonal() const {
  std::uint32_t d = 0;
  for (int j = 0; j < dim(); ++j) d |= static_cast<std::uint32_t>(get(j, j)) << j;
  return d;
}

int SymMatGF2::quad_form_z4(std::uint32_t y) const {
  // Diagonal terms once, off-diagonal pairs twice: sum over i in y of |row_i & y|.
  int s = 0;
  for (std::uint32_t t = y; t; t &= t - 1) s += std::popcount(m_.row(std::countr_zero(t)) & y);
  return s & 3;
}

std::string SymMatGF2::to_rows_hex() const {
  std::ostringstream os;
  os << std::hex;
  for (int j = 0; j < dim(); ++j) {
    if (j) os << '.';
    os << m_.row(j);
  }
  return os.str();
}

SymMatGF2 SymMatGF2::from_rows_hex(int dim, const std::string& text) {
  BitMatrix m(dim);
  std::istringstream is(text);
  std::string tok;
  int j = 0;
  while (std::getline(is, tok, '.')) {
    if (j >= dim || tok.empty()) throw std::invalid_argument("bad matrix rows: " + text);
    std::size_t used = 0;
    const unsigned long v = std::stoul(tok, &used, 16);
    if (used != tok.size()) throw std::invalid_argument("bad matrix rows: " + text);
    m.set_row(j++, static_cast<std::uint32_t>(v));
  }
  if (j != dim) throw std::invalid_argument("wrong number of matrix rows: " + text);
  return SymMatGF2(m);
}

}  // namespace kerdock
