#include "kerdock/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <sstream>

#include "kerdock/rng.hpp"
#include "kerdock/walsh.hpp"

namespace kerdock {

namespace {

constexpr double kTol = 1e-9;

std::vector<SymMatGF2> quadratics(int n, HeavyCode code, const FieldContext* ctx) {
  std::vector<SymMatGF2> out;
  switch (code) {
    case HeavyCode::Rm1:
      out.emplace_back(n);
      break;
    case HeavyCode::Rm2: {
      if (n > 5) throw std::invalid_argument("full second-order enumeration limited to n <= 5");
      const int bits = n * (n + 1) / 2;
      for (std::uint32_t m = 0; m < (1u << bits); ++m) {
        SymMatGF2 q(n);
        int b = 0;
        for (int j = 0; j < n; ++j)
          for (int k = j; k < n; ++k) q.set(j, k, (m >> b++) & 1);
        out.push_back(q);
      }
      break;
    }
    case HeavyCode::Hankel:
      if (n > 12) throw std::invalid_argument("Hankel enumeration limited to n <= 12");
      for (std::uint64_t d = 0; d < (std::uint64_t{1} << (2 * n - 1)); ++d)
        out.push_back(HankelMatrix(n, d).to_sym());
      break;
    case HeavyCode::Kerdock:
      if (!ctx || ctx->degree() != n) throw std::invalid_argument("Kerdock enumeration needs a field of degree n");
      for (const auto& p : kerdock_set(*ctx)) out.push_back(p.to_sym());
      break;
  }
  return out;
}

std::vector<std::vector<std::uint8_t>> kerdock_words(const FieldContext& ctx) {
  const std::uint32_t N = ctx.size();
  std::vector<std::vector<std::uint8_t>> words;
  for (const auto& p : kerdock_set(ctx)) {
    const auto q = p.to_sym();
    for (std::uint32_t l = 0; l < N; ++l)
      for (int e = 0; e < 4; ++e) {
        std::vector<std::uint8_t> w(N);
        for (std::uint32_t y = 0; y < N; ++y)
          w[y] = static_cast<std::uint8_t>(codeword_exponent(CodewordLabel{q, l, e}, y));
        words.push_back(std::move(w));
      }
  }
  return words;
}

// Largest |dot| first; ties keep enumeration order so both implementations agree.
void sort_heavy(std::vector<HeavyEntry>& v) {
  std::stable_sort(v.begin(), v.end(),
                   [](const HeavyEntry& a, const HeavyEntry& b) { return std::norm(a.dot) > std::norm(b.dot); });
}

std::string tuple_text(std::initializer_list<std::uint32_t> t) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (auto v : t) {
    os << (first ? "" : ",") << v;
    first = false;
  }
  os << ')';
  return os.str();
}

}  // namespace

void OracleReport::add(std::string name, bool pass, std::string detail) {
  checks.push_back({std::move(name), pass, std::move(detail)});
}

void OracleReport::merge(const OracleReport& other) {
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool OracleReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string OracleReport::text() const {
  std::ostringstream os;
  for (const auto& n : notes) os << n << '\n';
  for (const auto& c : checks) {
    os << "CHECK " << c.name << ' ' << (c.pass ? "PASS" : "FAIL");
    if (!c.detail.empty()) os << ' ' << c.detail;
    os << '\n';
  }
  return os.str();
}

std::vector<HeavyEntry> dense_heavy_set(const DenseSignal& s, HeavyCode code, double k, const FieldContext* ctx) {
  const int n = s.n;
  const auto qs = quadratics(n, code, ctx);
  if (s.sq_norm() == 0) return {};
  const double thr = s.sq_norm() / k * (1 - kTol);
  const double inv = 1.0 / std::sqrt(static_cast<double>(s.size()));
  std::vector<std::vector<HeavyEntry>> found(qs.size());
  const long count = static_cast<long>(qs.size());
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<cd> buf(s.size());
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 16)
#endif
    for (long i = 0; i < count; ++i) {
      for (std::uint32_t y = 0; y < s.size(); ++y) buf[y] = s.values[y] * z4_unit(-qs[i].quad_form_z4(y));
      fwht(buf);
      for (std::uint32_t l = 0; l < s.size(); ++l) {
        const cd d = buf[l] * inv;
        if (std::norm(d) >= thr) found[i].push_back({CodewordLabel{qs[i], l, 0}, d});
      }
    }
  }
  std::vector<HeavyEntry> out;
  for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
  sort_heavy(out);
  return out;
}

std::vector<std::uint64_t> count_hankel_by_rank(int n) {
  if (n < 1 || n > 16) throw std::invalid_argument("rank census limited to n <= 16");
  std::vector<std::uint64_t> hist(n + 1, 0);
  const long long total = 1ll << (2 * n - 1);
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<std::uint64_t> local(n + 1, 0);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (long long d = 0; d < total; ++d) ++local[HankelMatrix(n, static_cast<std::uint64_t>(d)).to_sym().rank()];
#ifdef _OPENMP
#pragma omp critical
#endif
    for (int r = 0; r <= n; ++r) hist[r] += local[r];
  }
  return hist;
}

namespace serial {

std::vector<HeavyEntry> dense_heavy_set(const DenseSignal& s, HeavyCode code, double k, const FieldContext* ctx) {
  const auto qs = quadratics(s.n, code, ctx);
  if (s.sq_norm() == 0) return {};
  const double thr = s.sq_norm() / k * (1 - kTol);
  std::vector<HeavyEntry> out;
  for (const auto& q : qs)
    for (std::uint32_t l = 0; l < s.size(); ++l) {
      const CodewordLabel lab{q, l, 0};
      cd d{};
      for (std::uint32_t y = 0; y < s.size(); ++y) d += s.values[y] * std::conj(eval_rm2(lab, y));
      if (std::norm(d) >= thr) out.push_back({lab, d});
    }
  sort_heavy(out);
  return out;
}

std::vector<std::uint64_t> count_hankel_by_rank(int n) {
  std::vector<std::uint64_t> hist(n + 1, 0);
  for (std::uint64_t d = 0; d < (std::uint64_t{1} << (2 * n - 1)); ++d) ++hist[HankelMatrix(n, d).to_sym().rank()];
  return hist;
}

}  // namespace serial

OracleReport verify_field(const FieldContext& ctx) {
  OracleReport rep;
  const int n = ctx.degree();
  const std::string tag = "n=" + std::to_string(n);
  if (n > 16) throw std::invalid_argument("field suite limited to n <= 16");
  const std::uint32_t N = ctx.size();
  std::vector<std::uint8_t> tr(N);
  bool image_ok = true;
  std::uint32_t zeros = 0;
  for (std::uint32_t x = 0; x < N; ++x) {
    const auto t = ctx.trace_sum({x}).bits;
    image_ok = image_ok && t <= 1;
    tr[x] = static_cast<std::uint8_t>(t & 1u);
    zeros += t == 0;
  }
  rep.add("field.trace_image " + tag, image_ok);
  rep.add("field.trace_balance " + tag, zeros == N / 2,
          "zeros=" + std::to_string(zeros) + " expected=" + std::to_string(N / 2));
  if (n <= 10) {
    bool lin = true;
    for (std::uint32_t a = 0; a < N && lin; ++a)
      for (std::uint32_t b = 0; b < N; ++b)
        if (tr[a ^ b] != (tr[a] ^ tr[b])) {
          lin = false;
          break;
        }
    rep.add("field.trace_linear " + tag, lin);
  }
  if (n <= 12) {
    bool ok = true;
    for (std::uint32_t x = 0; x < N && ok; ++x) ok = ctx.square(ctx.sqrt({x})) == FieldElement{x};
    rep.add("field.sqrt " + tag, ok);
  }
  rep.add("field.xi_order " + tag, ctx.xi_pow(N - 1) == ctx.one());
  return rep;
}

OracleReport verify_field_table() {
  OracleReport rep;
  const auto table = primitive_table();
  for (std::size_t i = 0; i < table.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    rep.add("field.primitive n=" + std::to_string(n), is_primitive(table[i], n), format_poly_line(n, table[i]));
  }
  return rep;
}

OracleReport verify_kerdock_set(const FieldContext& ctx) {
  OracleReport rep;
  const int n = ctx.degree();
  const std::string tag = "n=" + std::to_string(n);
  const auto ks = kerdock_set(ctx);
  const std::uint32_t N = ctx.size();
  std::vector<SymMatGF2> syms;
  for (const auto& p : ks) syms.push_back(p.to_sym());
  std::uint64_t bad = 0;
  std::string witness;
  for (std::uint32_t a = 0; a < N; ++a)
    for (std::uint32_t b = a + 1; b < N; ++b)
      if ((syms[a] ^ syms[b]).rank() != n) {
        if (!bad) witness = "pair " + ks[a].diag_hex() + "," + ks[b].diag_hex();
        ++bad;
      }
  rep.add("kerdock.pair_rank " + tag, bad == 0,
          bad ? witness : "pairs=" + std::to_string(std::uint64_t{N} * (N - 1) / 2));
  std::uint32_t noncommuting = 0;
  for (const auto& p : ks) noncommuting += !check_commute(ctx, p);
  rep.add("kerdock.commute " + tag, noncommuting == 0, "failures=" + std::to_string(noncommuting));
  bool same = true;
  std::vector<std::uint64_t> from_trace;
  for (std::uint32_t a = 0; a < N; ++a) {
    const auto t = trace_kerdock(ctx, {a});
    same = same && t == lf_kerdock(ctx, static_cast<std::uint32_t>(t.diag() & ctx.mask()));
    from_trace.push_back(t.diag());
  }
  std::sort(from_trace.begin(), from_trace.end());
  const bool distinct = std::adjacent_find(from_trace.begin(), from_trace.end()) == from_trace.end();
  rep.add("kerdock.trace_equals_recurrence " + tag, same && distinct);
  return rep;
}

OracleReport verify_commute_equivalence(const FieldContext& ctx) {
  OracleReport rep;
  const int n = ctx.degree();
  if (n > 6) throw std::invalid_argument("equivalence sweep limited to n <= 6");
  const std::uint32_t N = ctx.size();
  std::vector<std::uint32_t> mul(N * N), sq(N);
  for (std::uint32_t a = 0; a < N; ++a) {
    sq[a] = ctx.sqrt({a}).bits;
    for (std::uint32_t b = 0; b < N; ++b) mul[a * N + b] = ctx.mul({a}, {b}).bits;
  }
  std::uint64_t disagree = 0, lf_count = 0;
  std::string witness;
  std::vector<std::uint32_t> lm(N);
  for (std::uint64_t d = 0; d < (std::uint64_t{1} << (2 * n - 1)); ++d) {
    const HankelMatrix p(n, d);
    const BitMatrix m = p.to_sym().matrix();
    for (std::uint32_t u = 0; u < N; ++u) lm[u] = m.left_mul(u);
    auto bil = [&](std::uint32_t x, std::uint32_t z) { return std::popcount(lm[x] & z) & 1; };
    const bool c1 = is_kerdock_prefix(ctx, d, 2 * n - 1);
    bool c2 = true;
    for (std::uint32_t r = 0; r < N && c2; ++r)
      for (std::uint32_t s = 0; s < N; ++s) {
        const std::uint32_t w = sq[mul[r * N + s]];
        if (bil(r, s) != bil(w, w)) {
          c2 = false;
          break;
        }
      }
    bool c3 = true;
    for (std::uint32_t x = 0; x < N && c3; ++x)
      for (std::uint32_t y = 0; y < N && c3; ++y)
        for (std::uint32_t z = 0; z < N; ++z)
          if (bil(x, mul[y * N + z]) != bil(mul[x * N + y], z)) {
            c3 = false;
            break;
          }
    lf_count += c1;
    if (c1 != c2 || c1 != c3) {
      if (!disagree) witness = "diag=" + p.diag_hex();
      ++disagree;
    }
  }
  rep.add("kerdock.three_way n=" + std::to_string(n), disagree == 0 && lf_count == N,
          disagree ? witness : "kerdock=" + std::to_string(lf_count));
  return rep;
}

OracleReport verify_homomorphism(const FieldContext& ctx) {
  OracleReport rep;
  const int n = ctx.degree();
  if (n > 8) throw std::invalid_argument("homomorphism sweep limited to n <= 8");
  const std::uint32_t N = ctx.size();
  std::vector<BitMatrix> K;
  for (std::uint32_t a = 0; a < N; ++a) K.push_back(trace_kerdock(ctx, {a}).to_sym().matrix());
  const auto J = K[1].inverse();
  if (!J) {
    rep.add("kerdock.homomorphism n=" + std::to_string(n), false, "K_1 singular");
    return rep;
  }
  std::vector<BitMatrix> KJ;
  for (const auto& k : K) KJ.push_back(k * *J);
  bool mult = true, add = true;
  for (std::uint32_t x = 0; x < N; ++x)
    for (std::uint32_t y = 0; y < N; ++y) {
      mult = mult && KJ[x] * KJ[y] == KJ[ctx.mul({x}, {y}).bits];
      add = add && (K[x] ^ K[y]) == K[x ^ y];
    }
  rep.add("kerdock.homomorphism n=" + std::to_string(n), mult && add);
  return rep;
}

OracleReport verify_dickson(int n, std::size_t trials, std::uint64_t seed) {
  OracleReport rep;
  auto g = make_stream(seed, static_cast<std::uint64_t>(n));
  auto random_sym = [&]() {
    SymMatGF2 q(n);
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) q.set(j, k, static_cast<int>(g() & 1u));
    return q;
  };
  std::size_t bad = 0, equal_bad = 0, equal_trials = 0;
  double worst = 0;
  std::string witness, equal_witness;
  for (std::size_t t = 0; t < trials; ++t) {
    CodewordLabel a{random_sym(), draw_bits(g, n), static_cast<int>(g() & 3u)};
    CodewordLabel b{random_sym(), draw_bits(g, n), static_cast<int>(g() & 3u)};
    const bool same_ell = t % 2 == 1;
    if (same_ell) b.ell = a.ell;
    if (a == b) continue;
    const int R = (a.Q ^ b.Q).rank();
    const double expect = std::pow(2.0, -R / 2.0);
    const double mag = std::abs(pair_dot(a, b));
    const double err = std::min(mag, std::abs(mag - expect));
    worst = std::max(worst, err);
    if (err > kTol && !bad++) witness = format_label(a) + " vs " + format_label(b);
    if (same_ell) {
      ++equal_trials;
      if (std::abs(mag - expect) > kTol && !equal_bad++)
        equal_witness = format_label(a) + " vs " + format_label(b) + " |dot|=" + std::to_string(mag) +
                        " R=" + std::to_string(R);
    }
  }
  std::ostringstream d;
  d << "pairs=" << trials << " worst=" << worst;
  if (!witness.empty()) d << " witness=" << witness;
  rep.add("dickson n=" + std::to_string(n), bad == 0, d.str());
  std::ostringstream e;
  e << "pairs=" << equal_trials << " violations=" << equal_bad;
  if (!equal_witness.empty()) e << " witness=" << equal_witness;
  rep.add("dickson.equal_ell n=" + std::to_string(n), equal_bad == 0, e.str());
  return rep;
}

IndependenceProfile independence_profile(const FieldContext& ctx) {
  const int n = ctx.degree();
  if (n > 5) throw std::invalid_argument("independence sweep limited to n <= 5");
  IndependenceProfile prof;
  const std::uint32_t N = ctx.size();
  const auto words = kerdock_words(ctx);
  const std::size_t C = words.size();
  std::string w3, w35, w4;

  bool three = true;
  for (std::uint32_t a = 0; a < N; ++a)
    for (std::uint32_t b = a + 1; b < N; ++b)
      for (std::uint32_t c = b + 1; c < N; ++c) {
        std::array<std::size_t, 64> h{};
        for (const auto& w : words) ++h[w[a] * 16 + w[b] * 4 + w[c]];
        if (three && std::any_of(h.begin(), h.end(), [&](std::size_t v) { return v * 64 != C; })) {
          three = false;
          w3 = "3-wise fails at " + tuple_text({a, b, c});
        }
      }

  bool half = true, four = true;
  if (N >= 4) {
    for (std::uint32_t a = 0; a < N; ++a)
      for (std::uint32_t b = a + 1; b < N; ++b)
        for (std::uint32_t c = b + 1; c < N; ++c)
          for (std::uint32_t d = c + 1; d < N; ++d) {
            std::array<std::size_t, 256> h{};
            for (const auto& w : words) ++h[w[a] * 64 + w[b] * 16 + w[c] * 4 + w[d]];
            if (four && std::any_of(h.begin(), h.end(), [&](std::size_t v) { return v * 256 != C; })) {
              four = false;
              w4 = "4-wise fails at " + tuple_text({a, b, c, d});
            }
            if (!half) continue;
            // Each of the four positions in turn is the one conditioned on the other three.
            for (int f = 0; f < 4 && half; ++f) {
              const int stride = 1 << (2 * (3 - f));
              for (int idx = 0; idx < 256 && half; ++idx) {
                if ((idx / stride) % 4 != 0) continue;
                const std::size_t v0 = h[idx], v1 = h[idx + stride], v2 = h[idx + 2 * stride], v3 = h[idx + 3 * stride];
                if (v0 != v2 || v1 != v3) {
                  half = false;
                  w35 = "3.5-wise fails at " + tuple_text({a, b, c, d}) + " free position " + std::to_string(f);
                }
              }
            }
          }
  }
  prof.three_wise = three;
  prof.three_half_wise = three && half;
  prof.four_wise = four;

  bool gray = true;
  std::vector<std::vector<std::uint8_t>> bin;
  for (const auto& w : words) bin.push_back(gray_map(w));
  const std::uint32_t M = 2 * N;
  std::string wg;
  for (std::uint32_t a = 0; a < M && gray; ++a)
    for (std::uint32_t b = a + 1; b < M && gray; ++b)
      for (std::uint32_t c = b + 1; c < M && gray; ++c)
        for (std::uint32_t d = c + 1; d < M && gray; ++d) {
          std::array<std::size_t, 16> h{};
          for (const auto& w : bin) ++h[w[a] * 8 + w[b] * 4 + w[c] * 2 + w[d]];
          if (std::any_of(h.begin(), h.end(), [&](std::size_t v) { return v * 16 != C; })) {
            gray = false;
            wg = "binary 4-wise fails at " + tuple_text({a, b, c, d});
          }
        }
  prof.gray_four_wise = gray;
  for (const auto* w : {&w3, &w35, &w4, &wg})
    if (!w->empty()) prof.witness += (prof.witness.empty() ? "" : "; ") + *w;
  return prof;
}

OracleReport verify_rank_histogram(int n) {
  OracleReport rep;
  const auto hist = count_hankel_by_rank(n);
  std::ostringstream os;
  os << "n=" << n << " rank histogram:";
  for (int r = 0; r <= n; ++r) os << ' ' << r << ':' << hist[r];
  rep.notes.push_back(os.str());
  bool ok = true;
  std::uint64_t cum = 0, total = 0;
  for (int r = 0; r <= n; ++r) {
    cum += hist[r];
    total += hist[r];
    if (4 * r < 64 && cum > (std::uint64_t{1} << (4 * r))) ok = false;
  }
  rep.add("rank.bound n=" + std::to_string(n), ok && total == (std::uint64_t{1} << (2 * n - 1)));
  return rep;
}

OracleReport verify_small_contributions(int n, int k, int trials, std::uint64_t seed) {
  OracleReport rep;
  auto g = make_stream(seed, 0x736d616c6cull + static_cast<std::uint64_t>(n));
  int used = 0, bad = 0;
  std::string witness;
  for (int t = 0; t < trials; ++t) {
    CodewordLabel lab{HankelMatrix(n, g() & ((std::uint64_t{1} << (2 * n - 1)) - 1)).to_sym(), draw_bits(g, n), 0};
    const std::vector<Term> terms{{lab, cd(1, 0)}};
    const auto s = make_noisy(n, terms, 0.9 * (k - 1), g());
    const auto phi = synthesize(n, terms);
    cd full{};
    for (std::uint32_t y = 0; y < s.size(); ++y) full += phi.values[y] * std::conj(s.values[y]);
    const double e = s.sq_norm();
    if (std::norm(full) < e / k) continue;
    ++used;
    for (int j = 1; j <= n; ++j) {
      const std::uint32_t blocks = 1u << (n - j), len = 1u << j;
      const double need = std::ldexp(1.0, j - n) * std::sqrt(e) / std::sqrt(4.0 * k);
      std::uint32_t count = 0;
      for (std::uint32_t u = 0; u < blocks; ++u) {
        cd ip{};
        for (std::uint32_t y = 0; y < len; ++y) ip += phi.values[u * len + y] * std::conj(s.values[u * len + y]);
        count += std::abs(ip) >= need * (1 - kTol);
      }
      if (count < blocks / (4.0 * k)) {
        if (!bad) witness = "level " + std::to_string(j) + " count " + std::to_string(count);
        ++bad;
      }
    }
  }
  rep.add("contributions n=" + std::to_string(n) + " k=" + std::to_string(k), bad == 0 && used > 0,
          "instances=" + std::to_string(used) + (witness.empty() ? "" : " " + witness));
  return rep;
}

OracleReport verify_incoherent_heavy(int n, int trials, std::uint64_t seed) {
  OracleReport rep;
  const auto ctx = FieldContext::standard(n);
  const auto ks = kerdock_set(ctx);
  const int kmax = static_cast<int>(std::floor(std::ldexp(1.0, n / 2) / 6.0 * (n % 2 ? std::sqrt(2.0) : 1.0)));
  auto g = make_stream(seed, 0x696e636full + static_cast<std::uint64_t>(n));
  std::size_t worst = 0;
  bool ok = kmax >= 1;
  for (int k = 1; k <= kmax; ++k)
    for (int t = 0; t < trials; ++t) {
      std::vector<Term> terms;
      for (int i = 0; i < k + 1; ++i) {
        const auto& p = ks[draw_bits(g, n)];
        const double amp = 1.0 / (1 + i);
        terms.push_back({make_label(p, draw_bits(g, n)), cd(amp, 0)});
      }
      const auto s = make_noisy(n, terms, 0.1, g());
      const auto heavy = dense_heavy_set(s, HeavyCode::Kerdock, k, &ctx);
      worst = std::max(worst, heavy.size());
      if (heavy.size() > static_cast<std::size_t>(4 * k)) ok = false;
    }
  rep.add("incoherence n=" + std::to_string(n), ok,
          "kmax=" + std::to_string(kmax) + " largest_heavy_set=" + std::to_string(worst));
  return rep;
}

}  // namespace kerdock
