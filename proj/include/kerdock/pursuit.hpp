// Greedy k-term approximation over a Kerdock dictionary.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kerdock/hankel_decoder.hpp"

namespace kerdock {

struct PursuitParams {
  int k = 3;
  double eps = 0.05;
  int rounds = 0;              // 0 = ceil(ln(1/eps)) + 1
  int heaviness = 2;           // each round decodes at parameter heaviness * k
  double c4 = 1.0 / 6;         // require k <= c4 sqrt(2^n)
  std::size_t norm_samples = 0;  // 0 = ceil(64 k / eps)
  std::size_t dot_samples = 0;   // 0 = ceil(64 k / eps)
  DecoderParams decoder;       // k, norm_hint and kerdock are set per round
};

struct RepTerm {
  HankelMatrix P;
  std::uint32_t ell = 0;
  int eps = 0;
  cd coef;

  CodewordLabel label() const { return make_label(P, ell, eps); }
};

struct Representation {
  std::vector<RepTerm> terms;
  std::vector<double> residual_energy;  // estimate after each accepted round, starting with ||s||^2
  std::uint64_t queries = 0;
};

Representation sparse_approx(const SampleOracle& s, const FieldContext& ctx, const PursuitParams& params,
                             std::uint64_t seed);

std::vector<Term> as_terms(const Representation& r);

// One line per term: "P-diag-hex ell-hex eps re im".
std::string format_representation(const Representation& r);
Representation parse_representation(std::istream& is, int n);

}  // namespace kerdock
