#include "kerdock/hankel_decoder.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "kerdock/rm1_decoder.hpp"
#include "kerdock/rng.hpp"
#include "kerdock/walsh.hpp"

namespace kerdock {

namespace {

constexpr std::uint64_t kSuffixStream = 0x737566ull;
constexpr std::uint64_t kFinalKmStream = 0x66696eull;
constexpr std::uint64_t kFinalDotStream = 0x646f74ull;

struct RawPairs {
  std::vector<std::uint32_t> a, b;
  std::vector<cd> prod;
};

struct SuffixSample {
  std::uint32_t suffix = 0;
  double rho = 0;               // restricted energy / (2^{j-n} ||s||^2)
  std::vector<cd> block;        // all 2^j values, or empty when pairs are used
  std::vector<RawPairs> pairs;  // one entry per prefix length q = 1..j
};

struct LevelPlan {
  int j = 0;
  bool all_suffixes = true;
  std::size_t per_repeat = 0;
  std::size_t repeats = 1;
  // Dense mode: every suffix, blocks taken from `values`.
  const std::vector<cd>* values = nullptr;
  std::vector<double> dense_rho;
  std::vector<SuffixSample> sampled;

  std::size_t suffix_count() const { return values ? dense_rho.size() : sampled.size(); }
};

struct Scratch {
  std::vector<cd> phase;  // conj(i^{y^T P y}) for the candidate
  std::vector<cd> buf;
  std::vector<PairLevel> levels;
};

double block_cost(int j) { return std::ldexp(1.0, j); }

double pair_cost(int j, std::size_t km) { return 2.0 * static_cast<double>(km) * j; }

bool use_block(int j, std::size_t km) { return block_cost(j) <= pair_cost(j, km); }

LevelPlan dense_plan(int n, int j, const std::vector<cd>& values, double energy) {
  LevelPlan plan;
  plan.j = j;
  plan.values = &values;
  const std::uint32_t blocks = 1u << (n - j), len = 1u << j;
  plan.dense_rho.resize(blocks);
  for (std::uint32_t u = 0; u < blocks; ++u) {
    double e = 0;
    for (std::uint32_t y = 0; y < len; ++y) e += std::norm(values[u * len + y]);
    plan.dense_rho[u] = e * blocks / energy;
  }
  return plan;
}

LevelPlan sampled_plan(const SampleOracle& s, int j, const ResolvedParams& rp, double energy,
                       std::uint64_t seed) {
  const int n = s.dimension();
  LevelPlan plan;
  plan.j = j;
  const std::uint32_t blocks = 1u << (n - j), len = 1u << j;
  const std::size_t total = rp.p.suffix_samples * rp.p.repeats;
  auto g = make_stream(seed, kSuffixStream + static_cast<std::uint64_t>(j));
  std::vector<std::uint32_t> suffixes;
  if (blocks <= total) {
    for (std::uint32_t u = 0; u < blocks; ++u) suffixes.push_back(u);
  } else {
    plan.all_suffixes = false;
    plan.per_repeat = rp.p.suffix_samples;
    plan.repeats = rp.p.repeats;
    for (std::size_t i = 0; i < total; ++i) suffixes.push_back(draw_bits(g, n - j));
  }
  const std::size_t km = rp.p.km_samples;
  for (auto u : suffixes) {
    SuffixSample ss;
    ss.suffix = u;
    const std::uint32_t base = u << j;
    double e = 0;
    std::size_t pts = 0;
    if (use_block(j, km)) {
      ss.block.resize(len);
      for (std::uint32_t y = 0; y < len; ++y) {
        ss.block[y] = s.query(base | y);
        e += std::norm(ss.block[y]);
      }
      pts = len;
    } else {
      ss.pairs.resize(j);
      for (int q = 1; q <= j; ++q) {
        auto& P = ss.pairs[q - 1];
        const std::uint32_t lowmask = (1u << q) - 1;
        P.a.resize(km);
        P.b.resize(km);
        P.prod.resize(km);
        for (std::size_t i = 0; i < km; ++i) {
          const std::uint32_t a = draw_bits(g, j);
          const std::uint32_t b = (a & ~lowmask) | draw_bits(g, q);
          const cd va = s.query(base | a), vb = s.query(base | b);
          P.a[i] = a;
          P.b[i] = b;
          P.prod[i] = va * std::conj(vb);
          e += std::norm(va) + std::norm(vb);
        }
        pts += 2 * km;
      }
    }
    ss.rho = e / static_cast<double>(pts) * std::ldexp(1.0, n) / energy;
    plan.sampled.push_back(std::move(ss));
  }
  return plan;
}

void fill_phase(const HankelMatrix& p, Scratch& sc) {
  const std::uint32_t len = 1u << p.dim();
  sc.phase.resize(len);
  for (std::uint32_t y = 0; y < len; ++y) sc.phase[y] = z4_unit(-p.quad_form_z4(y));
}

// Largest normalized restricted coefficient over all linear prefixes.
double block_beta(const cd* blk, int n, int j, double energy, Scratch& sc) {
  const std::uint32_t len = 1u << j;
  sc.buf.resize(len);
  for (std::uint32_t y = 0; y < len; ++y) sc.buf[y] = blk[y] * sc.phase[y];
  fwht(sc.buf);
  double best = 0;
  for (const auto& v : sc.buf) best = std::max(best, std::norm(v));
  return best * std::ldexp(1.0, n - 2 * j) / energy;
}

bool pairs_pass(const SuffixSample& ss, const HankelMatrix& p, int n, const ResolvedParams& rp,
                double energy, Scratch& sc) {
  const int j = p.dim();
  sc.levels.resize(j);
  for (int q = 0; q < j; ++q) {
    const auto& P = ss.pairs[q];
    auto& L = sc.levels[q];
    L.diff.resize(P.prod.size());
    L.prod.resize(P.prod.size());
    for (std::size_t i = 0; i < P.prod.size(); ++i) {
      L.diff[i] = P.a[i] ^ P.b[i];
      L.prod[i] = P.prod[i] * z4_unit(p.quad_form_z4(P.b[i]) - p.quad_form_z4(P.a[i]));
    }
  }
  return !km_tree(sc.levels, std::ldexp(1.0, n) / energy, rp.tau, rp.km_cap).empty();
}

bool suffix_pass(const LevelPlan& plan, std::size_t idx, const HankelMatrix& p, int n,
                 const ResolvedParams& rp, double energy, Scratch& sc) {
  const int j = plan.j;
  if (plan.values) {
    if (plan.dense_rho[idx] > rp.gate) return true;
    return block_beta(plan.values->data() + (idx << j), n, j, energy, sc) >= rp.tau;
  }
  const auto& ss = plan.sampled[idx];
  if (ss.rho > rp.gate) return true;
  if (!ss.block.empty()) return block_beta(ss.block.data(), n, j, energy, sc) >= rp.tau;
  return pairs_pass(ss, p, n, rp, energy, sc);
}

bool run_test(const LevelPlan& plan, const HankelMatrix& p, int n, const ResolvedParams& rp,
              double energy, Scratch& sc) {
  fill_phase(p, sc);
  if (plan.all_suffixes) {
    const std::size_t total = plan.suffix_count();
    const double need = std::max(1.0, rp.fraction * static_cast<double>(total));
    std::size_t passes = 0;
    for (std::size_t i = 0; i < total; ++i) {
      if (suffix_pass(plan, i, p, n, rp, energy, sc)) ++passes;
      if (passes >= need) return true;
      if (static_cast<double>(passes + (total - 1 - i)) < need) return false;
    }
    return false;
  }
  const double need = std::max(1.0, rp.fraction * static_cast<double>(plan.per_repeat));
  std::size_t votes = 0;
  for (std::size_t r = 0; r < plan.repeats; ++r) {
    std::size_t passes = 0;
    for (std::size_t i = 0; i < plan.per_repeat && passes < need; ++i)
      if (suffix_pass(plan, r * plan.per_repeat + i, p, n, rp, energy, sc)) ++passes;
    if (passes >= need) ++votes;
    if (2 * votes > plan.repeats) return true;
    if (2 * (votes + plan.repeats - 1 - r) <= plan.repeats) return false;
  }
  return false;
}

std::vector<char> test_all(const LevelPlan& plan, const std::vector<HankelMatrix>& cands, int n,
                           const ResolvedParams& rp, double energy) {
  std::vector<char> keep(cands.size(), 0);
  const long count = static_cast<long>(cands.size());
  const bool par = rp.p.parallel && count > 1;
  (void)par;
#ifdef _OPENMP
#pragma omp parallel if (par)
#endif
  {
    Scratch sc;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 4)
#endif
    for (long i = 0; i < count; ++i) keep[i] = run_test(plan, cands[i], n, rp, energy, sc) ? 1 : 0;
  }
  return keep;
}

LevelPlan make_plan(const SampleOracle& s, int j, const ResolvedParams& rp, double energy,
                    const std::vector<cd>* dense_values, std::uint64_t seed) {
  if (dense_values) return dense_plan(s.dimension(), j, *dense_values, energy);
  return sampled_plan(s, j, rp, energy, seed);
}

void sort_terms(std::vector<DecodedTerm>& terms) {
  std::sort(terms.begin(), terms.end(), [](const DecodedTerm& a, const DecodedTerm& b) {
    if (a.est_sq != b.est_sq) return a.est_sq > b.est_sq;
    if (a.P != b.P) return a.P < b.P;
    return a.ell < b.ell;
  });
}

}  // namespace

DecoderOverflow::DecoderOverflow(int lvl, std::size_t cnt, std::size_t cap)
    : std::runtime_error("candidate list overflow at level " + std::to_string(lvl) + ": " +
                         std::to_string(cnt) + " > cap " + std::to_string(cap)),
      level(lvl),
      count(cnt) {}

ResolvedParams resolve_params(const DecoderParams& params, int n) {
  if (params.k < 1) throw std::invalid_argument("k must be at least 1");
  if (params.norm_hint <= 0) throw std::invalid_argument("decoder needs a positive norm hint");
  if (params.c1 <= 0 || params.c1 > 1) throw std::invalid_argument("c1 must lie in (0, 1]");
  if (params.c2 < 1) throw std::invalid_argument("c2 must be at least 1");
  if (params.delta <= 0 || params.delta >= 1) throw std::invalid_argument("delta must lie in (0, 1)");
  if (n < 1 || n > kMaxFieldDegree) throw std::invalid_argument("signal dimension out of range");
  if (params.kerdock && params.kerdock->degree() != n)
    throw std::invalid_argument("field degree differs from signal dimension");
  ResolvedParams rp;
  rp.p = params;
  auto& p = rp.p;
  const double k = p.k;
  if (p.c3 <= 0) p.c3 = p.c1 / 40;
  if (!p.suffix_samples) p.suffix_samples = static_cast<std::size_t>(std::ceil(8 * k / p.c1));
  if (!p.repeats) p.repeats = static_cast<std::size_t>(std::ceil(std::log(2.0 * n / p.delta)));
  if (!p.km_samples) p.km_samples = km_default_samples(1.0 / (4 * k), p.delta, n);
  if (!p.dot_samples) p.dot_samples = p.km_samples;
  if (!p.candidate_cap) p.candidate_cap = static_cast<std::size_t>(64 * k * k * k);
  rp.gate = k / p.c3;
  rp.tau = 1.0 / (4 * k * p.c2);
  rp.fraction = (1 + p.c1) / 2 / (4 * k);
  rp.km_cap = static_cast<std::size_t>(16 * k);

  const double N = std::ldexp(1.0, n);
  double pts = 0;
  for (int j = 2; j <= n; ++j) {
    const double suffixes = std::min(std::ldexp(1.0, n - j), static_cast<double>(p.suffix_samples * p.repeats));
    pts += suffixes * std::min(block_cost(j), pair_cost(j, p.km_samples));
  }
  pts += pair_cost(n, km_default_samples(1.0 / k, p.delta, n)) + static_cast<double>(p.dot_samples);
  rp.planned_points = pts;
  rp.dense = p.allow_dense && (pts >= N || n < 2 || k >= N);
  return rp;
}

std::vector<HankelMatrix> extend(const HankelMatrix& p) {
  const int j = p.dim();
  std::vector<HankelMatrix> out;
  for (std::uint64_t b = 0; b < 4; ++b) out.emplace_back(j + 1, p.diag() | (b << (2 * j - 1)));
  return out;
}

bool test_candidate(const SampleOracle& s, const HankelMatrix& prefix, const DecoderParams& params,
                    std::uint64_t seed) {
  const int n = s.dimension();
  if (prefix.dim() > n) throw std::invalid_argument("prefix larger than the signal dimension");
  const auto rp = resolve_params(params, n);
  const double energy = params.norm_hint * params.norm_hint;
  std::vector<cd> values;
  if (rp.dense) values = read_all(s).values;
  CachedOracle cache(s);
  const auto plan = make_plan(cache, prefix.dim(), rp, energy, rp.dense ? &values : nullptr,
                              mix_seed(seed, static_cast<std::uint64_t>(prefix.dim())));
  Scratch sc;
  return run_test(plan, prefix, n, rp, energy, sc);
}

DecodeResult list_decode_hankel(const SampleOracle& s, const DecoderParams& params, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = s.dimension();
  const auto rp = resolve_params(params, n);
  const double energy = params.norm_hint * params.norm_hint;
  const std::uint64_t q0 = s.query_count();
  DecodeResult res;
  res.stats.dense = rp.dense;

  std::vector<cd> values;
  if (rp.dense) values = read_all(s).values;
  CachedOracle cache(s);

  std::vector<HankelMatrix> cands{HankelMatrix(1, 0), HankelMatrix(1, 1)};
  res.stats.tested.push_back(cands.size());
  res.stats.retained.push_back(cands.size());
  for (int j = 2; j <= n; ++j) {
    std::vector<HankelMatrix> next;
    next.reserve(4 * cands.size());
    for (const auto& c : cands)
      for (auto& e : extend(c))
        if (!rp.p.kerdock || is_kerdock_prefix(*rp.p.kerdock, e.diag(), 2 * j - 1)) next.push_back(e);
    res.stats.tested.push_back(next.size());
    const auto plan = make_plan(cache, j, rp, energy, rp.dense ? &values : nullptr,
                                mix_seed(seed, static_cast<std::uint64_t>(j)));
    const auto keep = test_all(plan, next, n, rp, energy);
    cands.clear();
    for (std::size_t i = 0; i < next.size(); ++i)
      if (keep[i]) cands.push_back(next[i]);
    res.stats.retained.push_back(cands.size());
    if (cands.size() > rp.p.candidate_cap) throw DecoderOverflow(j, cands.size(), rp.p.candidate_cap);
  }

  const double prune = energy / (2.0 * params.k);
  if (rp.dense) {
    const double inv = 1.0 / std::sqrt(std::ldexp(1.0, n));
    std::vector<std::vector<DecodedTerm>> found(cands.size());
    const long count = static_cast<long>(cands.size());
    const bool par = rp.p.parallel && count > 1;
    (void)par;
#ifdef _OPENMP
#pragma omp parallel if (par)
#endif
    {
      Scratch sc;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 4)
#endif
      for (long i = 0; i < count; ++i) {
        fill_phase(cands[i], sc);
        sc.buf.resize(values.size());
        for (std::size_t y = 0; y < values.size(); ++y) sc.buf[y] = values[y] * sc.phase[y];
        fwht(sc.buf);
        for (std::uint32_t l = 0; l < sc.buf.size(); ++l) {
          const cd c = sc.buf[l] * inv;
          if (std::norm(c) >= prune) found[i].push_back({cands[i], l, c, std::norm(c)});
        }
      }
    }
    for (auto& f : found) res.terms.insert(res.terms.end(), f.begin(), f.end());
  } else {
    KmParams kp;
    kp.theta = 1.0 / params.k;
    kp.delta = rp.p.delta;
    kp.norm_hint = params.norm_hint;
    kp.samples = km_default_samples(kp.theta, kp.delta, n);
    kp.dot_samples = rp.p.dot_samples;
    kp.allow_dense = false;
    std::vector<CodewordLabel> labels;
    std::vector<HankelMatrix> owners;
    for (const auto& p : cands) {
      DemodulatedOracle demod(cache, p.to_sym());
      for (const auto& hit : km_list(demod, kp, mix_seed(seed, kFinalKmStream))) {
        labels.push_back(make_label(p, hit.ell));
        owners.push_back(p);
      }
    }
    if (!labels.empty()) {
      const auto coefs = estimate_dots(cache, labels, rp.p.dot_samples, mix_seed(seed, kFinalDotStream));
      for (std::size_t i = 0; i < labels.size(); ++i)
        if (std::norm(coefs[i]) >= prune)
          res.terms.push_back({owners[i], labels[i].ell, coefs[i], std::norm(coefs[i])});
    }
  }
  sort_terms(res.terms);
  res.stats.queries = s.query_count() - q0;
  res.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

std::string format_report(const DecodeResult& r, bool with_timing) {
  std::ostringstream os;
  char buf[160];
  for (const auto& t : r.terms) {
    std::snprintf(buf, sizeof buf, "%s %x %.10g %.10g %.10g\n", t.P.diag_hex().c_str(), t.ell,
                  t.coef.real(), t.coef.imag(), t.est_sq);
    os << buf;
  }
  os << "stats mode=" << (r.stats.dense ? "dense" : "sampled") << " queries=" << r.stats.queries
     << " outputs=" << r.terms.size() << '\n';
  for (std::size_t j = 0; j < r.stats.tested.size(); ++j)
    os << "stats level=" << j + 1 << " tested=" << r.stats.tested[j] << " retained=" << r.stats.retained[j]
       << '\n';
  if (with_timing) {
    std::snprintf(buf, sizeof buf, "stats seconds=%.3f\n", r.stats.seconds);
    os << buf;
  }
  return os.str();
}

}  // namespace kerdock
