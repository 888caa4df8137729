// List decoding of first-order Reed-Muller codes (heavy Walsh coefficients) by
// bucket splitting over prefixes of the linear term.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kerdock/signal.hpp"

namespace kerdock {

struct KmParams {
  double theta = 0.25;
  double delta = 0.01;
  double norm_hint = 0;          // ||s||, must be positive
  std::size_t samples = 0;       // pairs per level; 0 = default
  std::size_t dot_samples = 0;   // 0 = same as samples
  bool allow_dense = true;       // read the whole signal when that is cheaper
};

struct KmHit {
  std::uint32_t ell = 0;
  cd coef;  // estimate of <s, phi_{0,ell,0}>
};

// ceil((4/theta)^2 * ln(2m/delta))
std::size_t km_default_samples(double theta, double delta, int m);

// Every ell with |<s,phi>|^2 >= theta ||s||^2 is returned with high probability;
// entries are kept when the estimated |coef|^2 >= theta/2 ||s||^2.
std::vector<KmHit> km_list(const SampleOracle& s, const KmParams& params, std::uint64_t seed);

// Pair observations for one prefix length q: the low-bit difference of the two
// points and s(a) conj(s(b)).
struct PairLevel {
  std::vector<std::uint32_t> diff;
  std::vector<cd> prod;
};

struct PrefixEstimate {
  std::uint32_t prefix = 0;
  double estimate = 0;
};

// Grows prefixes one bit per level; estimate = scale * mean Re(prod (-1)^{prefix.diff}).
// Keeps estimates >= keep, at most cap per level (largest first).
std::vector<PrefixEstimate> km_tree(std::span<const PairLevel> levels, double scale, double keep,
                                    std::size_t cap);

// Exact expectation of the bucket estimator for a q-bit prefix, enumerating all pairs.
double bucket_energy_exhaustive(const SampleOracle& s, std::uint32_t prefix, int q);

}  // namespace kerdock
