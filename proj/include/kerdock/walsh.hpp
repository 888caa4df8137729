// Walsh-Hadamard transforms (unnormalized): out[l] = sum_y a[y] (-1)^{l.y}.
#pragma once

#include <complex>
#include <span>
#include <vector>

namespace kerdock {

void fwht(std::span<std::complex<double>> a);

// Transforms each consecutive block of 2^j entries independently.
void fwht_blocks(std::span<std::complex<double>> a, int j);

namespace serial {
// O(N^2) reference.
std::vector<std::complex<double>> walsh_naive(std::span<const std::complex<double>> a);
}  // namespace serial

}  // namespace kerdock
