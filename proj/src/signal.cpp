#include "kerdock/signal.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "kerdock/rng.hpp"

namespace kerdock {

namespace {

constexpr std::uint64_t kNoiseStream = 0x6e6f697365ull;
constexpr std::uint64_t kNormStream = 0x6e6f726dull;
constexpr std::uint64_t kDotStream = 0x646f74ull;

std::vector<std::uint32_t> sample_points(std::uint32_t domain, int n, std::size_t samples,
                                         std::uint64_t seed, std::uint64_t stream) {
  std::vector<std::uint32_t> pts;
  if (samples >= domain) {
    pts.resize(domain);
    for (std::uint32_t y = 0; y < domain; ++y) pts[y] = y;
    return pts;
  }
  auto g = make_stream(seed, stream);
  pts.resize(samples);
  for (auto& p : pts) p = draw_bits(g, n);
  return pts;
}

}  // namespace

DenseSignal::DenseSignal(int dim) : n(dim), values(std::size_t{1} << dim) {
  if (dim < 0 || dim > kMaxFieldDegree) throw std::invalid_argument("signal dimension out of range");
}

double DenseSignal::sq_norm() const {
  double e = 0;
  for (auto v : values) e += std::norm(v);
  return e;
}

void write_signal(std::ostream& os, const DenseSignal& s) {
  os << "n=" << s.n << '\n';
  char buf[64];
  for (auto v : s.values) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.real(), v.imag());
    os << buf;
  }
}

DenseSignal read_signal(std::istream& is) {
  std::string header;
  if (!std::getline(is, header) || header.rfind("n=", 0) != 0)
    throw std::invalid_argument("signal file must start with n=<int>");
  int n = -1;
  try {
    n = std::stoi(header.substr(2));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad signal header: " + header);
  }
  DenseSignal s(n);
  std::string line;
  for (auto& v : s.values) {
    if (!std::getline(is, line)) throw std::invalid_argument("signal file truncated");
    std::istringstream ls(line);
    double re = 0, im = 0;
    std::string extra;
    if (!(ls >> re >> im) || (ls >> extra)) throw std::invalid_argument("bad signal line: " + line);
    v = {re, im};
  }
  while (std::getline(is, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      throw std::invalid_argument("signal file has extra lines");
  return s;
}

DenseSignal synthesize(int n, std::span<const Term> terms) {
  DenseSignal s(n);
  for (const auto& t : terms) {
    if (t.label.n() != n) throw std::invalid_argument("term dimension mismatch");
    for (std::uint32_t y = 0; y < s.size(); ++y) s.values[y] += t.coef * eval_rm2(t.label, y);
  }
  return s;
}

DenseSignal make_noisy(int n, std::span<const Term> terms, double noise_energy, std::uint64_t seed) {
  if (noise_energy < 0) throw std::invalid_argument("negative noise energy");
  DenseSignal s = synthesize(n, terms);
  if (noise_energy == 0) return s;
  const std::uint64_t key = mix_seed(seed, kNoiseStream);
  std::vector<cd> nu(s.size());
  double e = 0;
  for (std::uint32_t y = 0; y < s.size(); ++y) {
    nu[y] = hashed_gaussian(key, y);
    e += std::norm(nu[y]);
  }
  const double scale = std::sqrt(noise_energy / e);
  for (std::uint32_t y = 0; y < s.size(); ++y) s.values[y] += scale * nu[y];
  return s;
}

SampleOracle::SampleOracle(int n) : n_(n) {
  if (n < 0 || n > kMaxFieldDegree) throw std::invalid_argument("oracle dimension out of range");
}

cd SampleOracle::query(std::uint32_t y) const {
  if (y >> n_) throw std::out_of_range("query index outside the domain");
  count_.fetch_add(1, std::memory_order_relaxed);
  return evaluate(y);
}

DenseOracle::DenseOracle(DenseSignal s) : SampleOracle(s.n), s_(std::move(s)) {}

PlantedOracle::PlantedOracle(int n, std::vector<Term> terms, double noise_energy, std::uint64_t seed)
    : SampleOracle(n), terms_(std::move(terms)), key_(mix_seed(seed, kNoiseStream)) {
  if (noise_energy < 0) throw std::invalid_argument("negative noise energy");
  for (const auto& t : terms_)
    if (t.label.n() != n) throw std::invalid_argument("term dimension mismatch");
  sigma_ = std::sqrt(noise_energy / static_cast<double>(domain_size()));
}

cd PlantedOracle::evaluate(std::uint32_t y) const {
  cd v = sigma_ > 0 ? sigma_ * hashed_gaussian(key_, y) : cd{};
  for (const auto& t : terms_) v += t.coef * eval_rm2(t.label, y);
  return v;
}

RestrictedOracle::RestrictedOracle(const SampleOracle& base, int j, std::uint32_t suffix)
    : SampleOracle(j), base_(base), suffix_(suffix) {
  if (j > base.dimension() || (suffix >> (base.dimension() - j)))
    throw std::invalid_argument("restriction does not fit the base dimension");
}

cd RestrictedOracle::evaluate(std::uint32_t y) const {
  return base_.query(y | (dimension() == 32 ? 0u : suffix_ << dimension()));
}

DemodulatedOracle::DemodulatedOracle(const SampleOracle& base, SymMatGF2 p)
    : SampleOracle(base.dimension()), base_(base), p_(std::move(p)) {
  if (p_.dim() != base.dimension()) throw std::invalid_argument("matrix size differs from signal");
}

cd DemodulatedOracle::evaluate(std::uint32_t y) const {
  return base_.query(y) * z4_unit(-p_.quad_form_z4(y));
}

ResidualOracle::ResidualOracle(const SampleOracle& base, std::vector<Term> terms)
    : SampleOracle(base.dimension()), base_(base), terms_(std::move(terms)) {
  for (const auto& t : terms_)
    if (t.label.n() != base.dimension()) throw std::invalid_argument("term dimension mismatch");
}

cd ResidualOracle::evaluate(std::uint32_t y) const {
  cd v = base_.query(y);
  for (const auto& t : terms_) v -= t.coef * eval_rm2(t.label, y);
  return v;
}

CachedOracle::CachedOracle(const SampleOracle& base) : SampleOracle(base.dimension()), base_(base) {}

std::size_t CachedOracle::distinct_points() const {
  std::lock_guard lock(mu_);
  return cache_.size();
}

cd CachedOracle::evaluate(std::uint32_t y) const {
  std::lock_guard lock(mu_);
  auto it = cache_.find(y);
  if (it != cache_.end()) return it->second;
  const cd v = base_.query(y);
  cache_.emplace(y, v);
  return v;
}

DenseSignal read_all(const SampleOracle& s) {
  DenseSignal d(s.dimension());
  for (std::uint32_t y = 0; y < d.size(); ++y) d.values[y] = s.query(y);
  return d;
}

double estimate_sq_norm(const SampleOracle& s, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("need at least one sample");
  const auto pts = sample_points(s.domain_size(), s.dimension(), samples, seed, kNormStream);
  double acc = 0;
  for (auto y : pts) acc += std::norm(s.query(y));
  return acc * s.domain_size() / static_cast<double>(pts.size());
}

cd estimate_dot(const SampleOracle& s, const CodewordLabel& label, std::size_t samples,
                std::uint64_t seed) {
  return estimate_dots(s, std::span(&label, 1), samples, seed).front();
}

std::vector<cd> estimate_dots(const SampleOracle& s, std::span<const CodewordLabel> labels,
                              std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("need at least one sample");
  for (const auto& l : labels)
    if (l.n() != s.dimension()) throw std::invalid_argument("label dimension differs from signal");
  const auto pts = sample_points(s.domain_size(), s.dimension(), samples, seed, kDotStream);
  std::vector<cd> vals(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = s.query(pts[i]);
  std::vector<cd> out(labels.size());
  for (std::size_t k = 0; k < labels.size(); ++k) {
    cd acc{};
    for (std::size_t i = 0; i < pts.size(); ++i) acc += vals[i] * std::conj(eval_rm2(labels[k], pts[i]));
    out[k] = acc * (static_cast<double>(s.domain_size()) / static_cast<double>(pts.size()));
  }
  return out;
}

}  // namespace kerdock
