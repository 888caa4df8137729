#include "kerdock/walsh.hpp"

#include <bit>
#include <stdexcept>

namespace kerdock {

void fwht(std::span<std::complex<double>> a) {
  const std::size_t n = a.size();
  if (n && !std::has_single_bit(n)) throw std::invalid_argument("length must be a power of two");
  for (std::size_t len = 1; len < n; len <<= 1)
    for (std::size_t i = 0; i < n; i += len << 1)
      for (std::size_t k = i; k < i + len; ++k) {
        const auto u = a[k], v = a[k + len];
        a[k] = u + v;
        a[k + len] = u - v;
      }
}

void fwht_blocks(std::span<std::complex<double>> a, int j) {
  const std::size_t block = std::size_t{1} << j;
  if (a.size() % block) throw std::invalid_argument("length not a multiple of the block");
  for (std::size_t off = 0; off < a.size(); off += block) fwht(a.subspan(off, block));
}

namespace serial {

std::vector<std::complex<double>> walsh_naive(std::span<const std::complex<double>> a) {
  std::vector<std::complex<double>> out(a.size());
  for (std::size_t l = 0; l < a.size(); ++l)
    for (std::size_t y = 0; y < a.size(); ++y)
      out[l] += (std::popcount(l & y) & 1) ? -a[y] : a[y];
  return out;
}

}  // namespace serial

}  // namespace kerdock
