// Signals on Z2^n accessed through counted point queries.
#pragma once

#include <atomic>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "kerdock/codebook.hpp"

namespace kerdock {

struct Term {
  CodewordLabel label;
  cd coef;
};

struct DenseSignal {
  int n = 0;
  std::vector<cd> values;

  DenseSignal() = default;
  explicit DenseSignal(int dim);
  std::uint32_t size() const { return static_cast<std::uint32_t>(values.size()); }
  double sq_norm() const;
};

// "n=<int>" followed by 2^n lines "re im".
void write_signal(std::ostream& os, const DenseSignal& s);
DenseSignal read_signal(std::istream& is);

DenseSignal synthesize(int n, std::span<const Term> terms);
// Sum of terms plus complex Gaussian noise rescaled to exactly noise_energy.
DenseSignal make_noisy(int n, std::span<const Term> terms, double noise_energy, std::uint64_t seed);

class SampleOracle {
 public:
  explicit SampleOracle(int n);
  virtual ~SampleOracle() = default;
  SampleOracle(const SampleOracle&) = delete;
  SampleOracle& operator=(const SampleOracle&) = delete;

  int dimension() const { return n_; }
  std::uint32_t domain_size() const { return 1u << n_; }
  cd query(std::uint32_t y) const;
  std::uint64_t query_count() const { return count_.load(std::memory_order_relaxed); }

 protected:
  virtual cd evaluate(std::uint32_t y) const = 0;

 private:
  int n_;
  mutable std::atomic<std::uint64_t> count_{0};
};

class DenseOracle : public SampleOracle {
 public:
  explicit DenseOracle(DenseSignal s);
  const DenseSignal& signal() const { return s_; }

 protected:
  cd evaluate(std::uint32_t y) const override { return s_.values[y]; }

 private:
  DenseSignal s_;
};

// Synthesizes sum c phi + noise on demand; the noise at y depends only on (seed, y),
// with per-coordinate variance noise_energy / 2^n.
class PlantedOracle : public SampleOracle {
 public:
  PlantedOracle(int n, std::vector<Term> terms, double noise_energy, std::uint64_t seed);
  const std::vector<Term>& terms() const { return terms_; }

 protected:
  cd evaluate(std::uint32_t y) const override;

 private:
  std::vector<Term> terms_;
  double sigma_;
  std::uint64_t key_;
};

// y' in Z2^j -> base(y' | suffix << j)
class RestrictedOracle : public SampleOracle {
 public:
  RestrictedOracle(const SampleOracle& base, int j, std::uint32_t suffix);

 protected:
  cd evaluate(std::uint32_t y) const override;

 private:
  const SampleOracle& base_;
  std::uint32_t suffix_;
};

// base(y) * conj(i^{y^T P y})
class DemodulatedOracle : public SampleOracle {
 public:
  DemodulatedOracle(const SampleOracle& base, SymMatGF2 p);

 protected:
  cd evaluate(std::uint32_t y) const override;

 private:
  const SampleOracle& base_;
  SymMatGF2 p_;
};

// base(y) - sum c phi(y)
class ResidualOracle : public SampleOracle {
 public:
  ResidualOracle(const SampleOracle& base, std::vector<Term> terms);

 protected:
  cd evaluate(std::uint32_t y) const override;

 private:
  const SampleOracle& base_;
  std::vector<Term> terms_;
};

// Forwards each distinct point to the base once.
class CachedOracle : public SampleOracle {
 public:
  explicit CachedOracle(const SampleOracle& base);
  std::size_t distinct_points() const;

 protected:
  cd evaluate(std::uint32_t y) const override;

 private:
  const SampleOracle& base_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint32_t, cd> cache_;
};

// Reads every point (2^n queries).
DenseSignal read_all(const SampleOracle& s);

// N * mean |s(u)|^2 over uniform u; exact sum when samples >= N.
double estimate_sq_norm(const SampleOracle& s, std::size_t samples, std::uint64_t seed);
// N * mean s(y) conj(phi(y)), an unbiased estimate of <s, phi>; exact when samples >= N.
cd estimate_dot(const SampleOracle& s, const CodewordLabel& label, std::size_t samples,
                std::uint64_t seed);
// Same estimate for several labels on one shared sample.
std::vector<cd> estimate_dots(const SampleOracle& s, std::span<const CodewordLabel> labels,
                              std::size_t samples, std::uint64_t seed);

}  // namespace kerdock
