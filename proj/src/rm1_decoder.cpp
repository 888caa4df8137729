#include "kerdock/rm1_decoder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "kerdock/rng.hpp"
#include "kerdock/walsh.hpp"

namespace kerdock {

namespace {

constexpr std::uint64_t kPairStream = 0x6b6d70ull;

void sort_and_cap(std::vector<PrefixEstimate>& v, std::size_t cap) {
  std::sort(v.begin(), v.end(), [](const PrefixEstimate& a, const PrefixEstimate& b) {
    if (a.estimate != b.estimate) return a.estimate > b.estimate;
    return a.prefix < b.prefix;
  });
  if (v.size() > cap) v.resize(cap);
}

void sort_hits(std::vector<KmHit>& hits) {
  std::sort(hits.begin(), hits.end(), [](const KmHit& a, const KmHit& b) {
    const double na = std::norm(a.coef), nb = std::norm(b.coef);
    if (na != nb) return na > nb;
    return a.ell < b.ell;
  });
}

}  // namespace

std::size_t km_default_samples(double theta, double delta, int m) {
  if (theta <= 0 || theta > 1 || delta <= 0 || delta >= 1) throw std::invalid_argument("bad theta or delta");
  const double r = 4.0 / theta;
  return static_cast<std::size_t>(std::ceil(r * r * std::log(2.0 * std::max(m, 1) / delta)));
}

std::vector<PrefixEstimate> km_tree(std::span<const PairLevel> levels, double scale, double keep,
                                    std::size_t cap) {
  std::vector<PrefixEstimate> cur{{0u, 0.0}};
  for (std::size_t lvl = 0; lvl < levels.size() && !cur.empty(); ++lvl) {
    const auto& L = levels[lvl];
    const std::uint32_t bit = 1u << lvl;
    const double w = L.prod.empty() ? 0.0 : scale / static_cast<double>(L.prod.size());
    std::vector<PrefixEstimate> next;
    next.reserve(2 * cur.size());
    for (const auto& p : cur) {
      double a = 0, b = 0;  // pairs whose difference has the new bit clear / set
      for (std::size_t i = 0; i < L.prod.size(); ++i) {
        const double x = (std::popcount(p.prefix & L.diff[i]) & 1) ? -L.prod[i].real() : L.prod[i].real();
        if (L.diff[i] & bit)
          b += x;
        else
          a += x;
      }
      if ((a + b) * w >= keep) next.push_back({p.prefix, (a + b) * w});
      if ((a - b) * w >= keep) next.push_back({p.prefix | bit, (a - b) * w});
    }
    sort_and_cap(next, cap);
    cur = std::move(next);
  }
  return cur;
}

double bucket_energy_exhaustive(const SampleOracle& s, std::uint32_t prefix, int q) {
  const int m = s.dimension();
  if (q < 0 || q > m || (prefix >> q)) throw std::invalid_argument("bad prefix");
  const std::uint32_t low = 1u << q, high = 1u << (m - q);
  double acc = 0;
  for (std::uint32_t h = 0; h < high; ++h) {
    cd inner{};
    for (std::uint32_t a = 0; a < low; ++a) {
      const cd v = s.query(a | (h << q));
      inner += (std::popcount(prefix & a) & 1) ? -v : v;
    }
    acc += std::norm(inner);
  }
  // N * E over (h, a, b) of s(h,a) conj(s(h,b)) (-1)^{prefix.(a^b)}
  return acc * static_cast<double>(s.domain_size()) / (static_cast<double>(high) * low * low);
}

std::vector<KmHit> km_list(const SampleOracle& s, const KmParams& params, std::uint64_t seed) {
  const int m = s.dimension();
  if (params.norm_hint <= 0) throw std::invalid_argument("km_list needs a positive norm hint");
  const double energy = params.norm_hint * params.norm_hint;
  const double keep = params.theta / 2 * energy;
  const std::size_t samples = params.samples ? params.samples : km_default_samples(params.theta, params.delta, m);
  const std::size_t dot_samples = params.dot_samples ? params.dot_samples : samples;
  const std::uint32_t N = s.domain_size();
  std::vector<KmHit> hits;

  if (params.allow_dense && 2.0 * samples * m + dot_samples >= N) {
    auto d = read_all(s);
    fwht(d.values);
    const double inv = 1.0 / std::sqrt(static_cast<double>(N));
    for (std::uint32_t l = 0; l < N; ++l) {
      const cd c = d.values[l] * inv;
      if (std::norm(c) >= keep) hits.push_back({l, c});
    }
    sort_hits(hits);
    return hits;
  }

  auto g = make_stream(seed, kPairStream);
  std::vector<PairLevel> levels(m);
  for (int q = 1; q <= m; ++q) {
    auto& L = levels[q - 1];
    L.diff.resize(samples);
    L.prod.resize(samples);
    const std::uint32_t lowmask = (1u << q) - 1;
    for (std::size_t i = 0; i < samples; ++i) {
      const std::uint32_t a = draw_bits(g, m);
      const std::uint32_t b = (a & ~lowmask) | draw_bits(g, q);
      L.diff[i] = a ^ b;
      L.prod[i] = s.query(a) * std::conj(s.query(b));
    }
  }
  const auto cap = static_cast<std::size_t>(std::ceil(4.0 / params.theta));
  const auto leaves = km_tree(levels, static_cast<double>(N), keep, cap);
  std::vector<CodewordLabel> labels;
  for (const auto& p : leaves) labels.push_back(CodewordLabel{SymMatGF2(m), p.prefix, 0});
  if (labels.empty()) return hits;
  const auto coefs = estimate_dots(s, labels, dot_samples, mix_seed(seed, 1));
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (std::norm(coefs[i]) >= keep) hits.push_back({labels[i].ell, coefs[i]});
  sort_hits(hits);
  return hits;
}

}  // namespace kerdock
