// Invariants checked exhaustively or over many seeds.
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "kerdock/hankel_decoder.hpp"
#include "kerdock/oracle.hpp"
#include "kerdock/rm1_decoder.hpp"
#include "kerdock/rng.hpp"
#include "kerdock/walsh.hpp"

using namespace kerdock;

TEST_CASE("field: squaring is additive (exhaustive n <= 8)") {
  for (int n = 1; n <= 8; ++n) {
    const auto ctx = FieldContext::standard(n);
    for (std::uint32_t a = 0; a < ctx.size(); ++a)
      for (std::uint32_t b = 0; b < ctx.size(); ++b)
        REQUIRE(ctx.square({a ^ b}) == ctx.add(ctx.square({a}), ctx.square({b})));
  }
}

TEST_CASE("field: multiplication is a commutative monoid (10^4 random triples)") {
  for (int n : {5, 13, 24}) {
    const auto ctx = FieldContext::standard(n);
    auto g = make_stream(50, n);
    for (int t = 0; t < 10000; ++t) {
      const FieldElement a{draw_bits(g, n)}, b{draw_bits(g, n)}, c{draw_bits(g, n)};
      REQUIRE(ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c)));
      REQUIRE(ctx.mul(a, b) == ctx.mul(b, a));
      REQUIRE(ctx.mul(a, ctx.one()) == a);
      REQUIRE(ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
    }
  }
}

TEST_CASE("field: trace linearity (exhaustive n <= 10) and balance (n <= 16)") {
  for (int n = 1; n <= 16; ++n) {
    const auto ctx = FieldContext::standard(n);
    const auto t = ctx.trace_table();
    CHECK(std::count(t.begin(), t.end(), 0) == static_cast<long>(ctx.size() / 2));
    if (n > 10) continue;
    for (std::uint32_t a = 0; a < ctx.size(); ++a)
      for (std::uint32_t b = 0; b < ctx.size(); ++b) REQUIRE(t[a ^ b] == (t[a] ^ t[b]));
  }
}

TEST_CASE("field: sqrt inverts squaring (exhaustive n <= 12)") {
  for (int n = 1; n <= 12; ++n) {
    const auto ctx = FieldContext::standard(n);
    for (std::uint32_t a = 0; a < ctx.size(); ++a) REQUIRE(ctx.square(ctx.sqrt({a})).bits == a);
  }
}

TEST_CASE("Kerdock matrices form a binary linear space") {
  for (int n = 2; n <= 8; ++n) {
    const auto ctx = FieldContext::standard(n);
    std::set<std::uint64_t> set;
    for (const auto& p : kerdock_set(ctx)) set.insert(p.diag());
    for (std::uint32_t a = 0; a < ctx.size(); a += 3)
      for (std::uint32_t b = 0; b < ctx.size(); b += 5) {
        const auto x = trace_kerdock(ctx, {a}).diag() ^ trace_kerdock(ctx, {b}).diag();
        REQUIRE(set.count(x) == 1);
        REQUIRE(x == trace_kerdock(ctx, {a ^ b}).diag());
      }
  }
}

TEST_CASE("Kerdock codewords are mutually incoherent (n = 5, 7, all pairs)") {
  // <phi_{P1,l1}, phi_{P2,l2}> depends on l1 ^ l2 only, so one transform per (P1, P2) covers every l.
  for (int n : {5, 7}) {
    const auto ctx = FieldContext::standard(n);
    const auto ks = kerdock_set(ctx);
    const std::uint32_t N = ctx.size();
    const double bound = std::ldexp(1.0, -n) * std::sqrt(static_cast<double>(N)) * (1 + 1e-9);
    double worst = 0;
    std::vector<cd> buf(N);
    for (std::size_t i = 0; i < ks.size(); ++i)
      for (std::size_t j = i; j < ks.size(); ++j) {
        for (std::uint32_t y = 0; y < N; ++y) buf[y] = z4_unit(ks[i].quad_form_z4(y) - ks[j].quad_form_z4(y));
        fwht(buf);
        for (std::uint32_t l = 0; l < N; ++l) {
          if (i == j && l == 0) continue;
          worst = std::max(worst, std::abs(buf[l]) / N);
        }
      }
    CHECK(worst <= bound);
  }
}

TEST_CASE("restriction energies partition the signal energy") {
  const int n = 8;
  DenseOracle s(make_noisy(n, {}, 3.0, 1));
  for (int j = 0; j <= n; ++j) {
    double total = 0;
    for (std::uint32_t u = 0; u < (1u << (n - j)); ++u) total += read_all(RestrictedOracle(s, j, u)).sq_norm();
    CHECK(total == doctest::Approx(s.signal().sq_norm()).epsilon(1e-12));
  }
}

TEST_CASE("demodulation identity with exhaustive dots") {
  const int n = 6;
  auto g = make_stream(51, 0);
  DenseOracle s(make_noisy(n, {}, 1.0, 2));
  for (int t = 0; t < 30; ++t) {
    const HankelMatrix p(n, g() & ((1u << (2 * n - 1)) - 1));
    const std::uint32_t ell = draw_bits(g, n);
    DemodulatedOracle d(s, p.to_sym());
    const cd a = estimate_dot(d, CodewordLabel{SymMatGF2(n), ell, 0}, 1u << n, 1);
    const cd b = estimate_dot(s, make_label(p, ell), 1u << n, 1);
    CHECK(std::abs(a - b) < 1e-9);
  }
}

TEST_CASE("bucket tree never keeps more than its cap") {
  const int m = 8;
  auto g = make_stream(52, 0);
  DenseOracle s(make_noisy(m, {}, 1.0, 3));
  std::vector<PairLevel> levels(m);
  for (int q = 1; q <= m; ++q)
    for (int i = 0; i < 400; ++i) {
      const std::uint32_t a = draw_bits(g, m), b = (a & ~((1u << q) - 1)) | draw_bits(g, q);
      levels[q - 1].diff.push_back(a ^ b);
      levels[q - 1].prod.push_back(s.query(a) * std::conj(s.query(b)));
    }
  for (std::size_t cap : {1u, 4u, 8u, 16u})
    for (int depth = 1; depth <= m; ++depth)
      CHECK(km_tree(std::span<const PairLevel>(levels).first(depth), 256.0, -1e9, cap).size() <= cap);
}

TEST_CASE("first-order list superset on random signals (m = 8, sampled)") {
  const int m = 8;
  int ok = 0;
  const int trials = 40;
  for (int t = 0; t < trials; ++t) {
    auto g = make_stream(53, t);
    std::vector<Term> terms;
    for (int i = 0; i < 2; ++i) terms.push_back({CodewordLabel{SymMatGF2(m), draw_bits(g, m), 0}, cd(0.8, 0.3 * i)});
    DenseOracle s(make_noisy(m, terms, 0.5, t));
    KmParams kp;
    kp.norm_hint = std::sqrt(s.signal().sq_norm());
    kp.allow_dense = false;
    const auto hits = km_list(s, kp, t);
    bool all = true;
    for (const auto& h : dense_heavy_set(s.signal(), HeavyCode::Rm1, 1 / kp.theta))
      all = all && std::any_of(hits.begin(), hits.end(), [&](const KmHit& x) { return x.ell == h.label.ell; });
    ok += all;
  }
  CHECK(ok >= trials * 95 / 100);
}

TEST_CASE("true prefix survives every level (n = 6, 7; 100 instances)") {
  int ok = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 6 + t % 2;
    auto g = make_stream(54, t);
    const HankelMatrix p(n, g() & ((1u << (2 * n - 1)) - 1));
    const std::uint32_t ell = draw_bits(g, n);
    DenseOracle s(make_noisy(n, std::vector<Term>{{make_label(p, ell), cd(1, 0)}}, 1.0, t));
    DecoderParams dp;
    dp.k = 4;
    dp.norm_hint = std::sqrt(s.signal().sq_norm());
    bool all = true;
    for (int j = 1; j <= n && all; ++j) all = test_candidate(s, p.prefix(j), dp, t);
    ok += all;
  }
  CHECK(ok >= 95);
}

TEST_CASE("level widths: g(j+1) = 4 f(j), f(j) <= cap, dense runs read N points") {
  for (int t = 0; t < 10; ++t) {
    const int n = 5 + t % 3;
    auto g = make_stream(55, t);
    std::vector<Term> terms;
    for (int i = 0; i < 2; ++i)
      terms.push_back({make_label(HankelMatrix(n, g() & ((1u << (2 * n - 1)) - 1)), draw_bits(g, n)), cd(1, 0)});
    DenseOracle s(make_noisy(n, terms, 0.5, t));
    DecoderParams dp;
    dp.k = 8;  // 64 k^3 exceeds every level width at n <= 7
    dp.norm_hint = std::sqrt(s.signal().sq_norm());
    const auto r = list_decode_hankel(s, dp, t);
    const auto rp = resolve_params(dp, n);
    for (std::size_t j = 0; j < r.stats.retained.size(); ++j) {
      CHECK(r.stats.retained[j] <= rp.p.candidate_cap);
      if (j + 1 < r.stats.tested.size()) CHECK(r.stats.tested[j + 1] == 4 * r.stats.retained[j]);
    }
    CHECK(r.stats.dense);
    CHECK(r.stats.queries == (1u << n));
  }
}

TEST_CASE("incoherent dictionaries have few heavy codewords (n = 6, 8)") {
  for (int n : {6, 8}) {
    const auto r = verify_incoherent_heavy(n, 10, 9);
    for (const auto& c : r.checks) CHECK_MESSAGE(c.pass, c.detail);
  }
}
