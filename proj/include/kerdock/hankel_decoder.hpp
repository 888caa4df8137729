// List decoding of the Hankel subcode of second-order Reed-Muller codes by
// growing top-left prefixes of the quadratic part one row/column at a time.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kerdock/codebook.hpp"
#include "kerdock/field.hpp"
#include "kerdock/signal.hpp"

namespace kerdock {

struct DecoderParams {
  int k = 4;                     // report codewords with |<phi,s>|^2 >= ||s||^2 / k
  double c1 = 0.5;               // suffix pass fraction slack
  double c2 = 2.0;               // per-suffix threshold slack
  double c3 = 0.0;               // energy gate is k / c3; 0 = c1 / 40
  double delta = 0.01;
  double norm_hint = 0;          // ||s||, must be positive
  std::size_t suffix_samples = 0;  // suffixes per repeat; 0 = ceil(8k / c1)
  std::size_t repeats = 0;         // 0 = ceil(ln(2n / delta))
  std::size_t km_samples = 0;      // pairs per prefix level inside a suffix; 0 = default
  std::size_t dot_samples = 0;     // final coefficient estimates; 0 = km_samples
  std::size_t candidate_cap = 0;   // 0 = 64 k^3
  bool allow_dense = true;         // read everything when the sampling plan costs >= 2^n
  bool parallel = true;
  std::optional<FieldContext> kerdock;  // restrict to prefixes of Kerdock matrices
};

// Defaults filled in for a signal of dimension n.
struct ResolvedParams {
  DecoderParams p;
  double gate = 0;        // suffix energy ratio above which the suffix passes outright
  double tau = 0;         // per-suffix normalized threshold, 1/(4k c2)
  double fraction = 0;    // pass fraction, (1 + c1)/2 / (4k)
  std::size_t km_cap = 0; // prefixes kept per level inside a suffix
  bool dense = false;
  double planned_points = 0;
};
ResolvedParams resolve_params(const DecoderParams& params, int n);

struct DecodedTerm {
  HankelMatrix P;
  std::uint32_t ell = 0;
  cd coef;        // estimate of <s, phi_{P,ell,0}>
  double est_sq = 0;
};

struct DecodeStats {
  std::vector<std::size_t> tested;    // g(j), j = 1..n
  std::vector<std::size_t> retained;  // f(j)
  std::uint64_t queries = 0;
  double seconds = 0;
  bool dense = false;
};

struct DecodeResult {
  std::vector<DecodedTerm> terms;
  DecodeStats stats;
};

class DecoderOverflow : public std::runtime_error {
 public:
  DecoderOverflow(int level, std::size_t count, std::size_t cap);
  int level;
  std::size_t count;
};

// The four (j+1)x(j+1) Hankel matrices whose top-left block is p.
std::vector<HankelMatrix> extend(const HankelMatrix& p);

// Single-prefix test at level j = prefix.dim(), with the same plan the decoder uses.
bool test_candidate(const SampleOracle& s, const HankelMatrix& prefix, const DecoderParams& params,
                    std::uint64_t seed);

DecodeResult list_decode_hankel(const SampleOracle& s, const DecoderParams& params, std::uint64_t seed);

// One line per term "P-diag-hex ell-hex re im est" then "stats ..." lines.
std::string format_report(const DecodeResult& r, bool with_timing);

}  // namespace kerdock
