// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "kerdock/hankel_decoder.hpp"
#include "kerdock/oracle.hpp"
#include "kerdock/pursuit.hpp"
#include "kerdock/rm1_decoder.hpp"
#include "kerdock/rng.hpp"
#include "kerdock/walsh.hpp"

using namespace kerdock;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void verdict(int id, bool pass, const std::string& detail, double secs) {
  char t[32];
  std::snprintf(t, sizeof t, "%.1fs", secs);
  std::cout << "criterion " << id << ' ' << (pass ? "PASS" : "FAIL") << ": " << detail << " [" << t << "]"
            << std::endl;
  failures += !pass;
}

void note(const std::string& s) { std::cout << "  note: " << s << '\n'; }

double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

cd random_phase(std::mt19937_64& g, double mag) { return std::polar(mag, 2 * std::numbers::pi * uniform01(g)); }

std::string failed_checks(const OracleReport& r) {
  std::string out;
  for (const auto& c : r.checks)
    if (!c.pass) out += (out.empty() ? "" : "; ") + c.name + (c.detail.empty() ? "" : " " + c.detail);
  return out;
}

// ---------------------------------------------------------------------------

void criterion1() {
  const auto t0 = Clock::now();
  OracleReport r = verify_field_table();
  for (int n = 1; n <= 16; ++n) r.merge(verify_field(FieldContext::standard(n)));
  const double s = since(t0);
  const bool ok = r.all_pass() && s < 30;
  verdict(1, ok,
          "field suite n=1..16, " + std::to_string(r.checks.size()) + " checks" +
              (r.all_pass() ? "" : ", failed: " + failed_checks(r)) + (s < 30 ? "" : ", over 30 s"),
          s);
}

void criterion2() {
  const auto t0 = Clock::now();
  const auto ctx3 = FieldContext::standard(3);
  const auto p = lf_kerdock(ctx3, 0b111);
  const bool example = ctx3.poly() == 0xd && p.row(0) == 0b111 && p.row(1) == 0b011 && p.row(2) == 0b101;
  OracleReport r;
  for (int n : {3, 5, 7, 9}) r.merge(verify_kerdock_set(FieldContext::standard(n)));
  for (int n = 1; n <= 6; ++n) r.merge(verify_commute_equivalence(FieldContext::standard(n)));
  for (int n = 1; n <= 8; ++n) r.merge(verify_homomorphism(FieldContext::standard(n)));
  const double s = since(t0);
  verdict(2, example && r.all_pass() && s < 120,
          std::string("example top row 111 -> rows 111/110/101 ") + (example ? "ok" : "MISMATCH") +
              "; Kerdock sets n=3,5,7,9, three-way equivalence n<=6, homomorphism n<=8: " +
              std::to_string(r.checks.size()) + " checks" + (r.all_pass() ? "" : ", failed: " + failed_checks(r)),
          s);
}

void criterion3() {
  const auto t0 = Clock::now();
  OracleReport r;
  for (int n : {4, 5, 6}) r.merge(verify_dickson(n, 10000, 2024 + n));
  const double s = since(t0);
  bool main_ok = true, equal_ok = true;
  for (const auto& c : r.checks) {
    if (c.name.rfind("dickson.equal_ell", 0) == 0)
      equal_ok = equal_ok && c.pass;
    else
      main_ok = main_ok && c.pass;
  }
  std::string detail = "10^4 pairs at n=4,5,6: |dot| in {0, 2^-R/2} ";
  detail += main_ok ? "holds" : "VIOLATED";
  detail += "; equal-l subcase ";
  detail += equal_ok ? "holds" : "VIOLATED";
  for (const auto& c : r.checks)
    if (!c.pass) note(c.name + " " + c.detail);
  verdict(3, main_ok && equal_ok && s < 60, detail, s);
}

void criterion4() {
  const auto t0 = Clock::now();
  const auto p3 = independence_profile(FieldContext::standard(3));
  const auto p4 = independence_profile(FieldContext::standard(4));
  const double s = since(t0);
  const bool ok3 = p3.three_wise && p3.three_half_wise && !p3.four_wise && p3.gray_four_wise;
  const bool ok4 = p4.three_wise && !p4.three_half_wise;
  note("n=3: " + p3.witness);
  note("n=4: " + p4.witness);
  verdict(4, ok3 && ok4 && s < 120,
          std::string("n=3 3.5-wise with 4-wise witness, Gray 4-wise: ") + (ok3 ? "yes" : "no") +
              "; n=4 3.5-wise witness: " + (ok4 ? "yes" : "no"),
          s);
}

void criterion5() {
  const auto t0 = Clock::now();
  OracleReport r;
  for (int n = 4; n <= 8; ++n) r.merge(verify_rank_histogram(n));
  const double s = since(t0);
  for (const auto& n : r.notes) note(n);
  verdict(5, r.all_pass() && s < 60, "cumulative rank counts <= 2^{4r} for n=4..8" +
                                          (r.all_pass() ? std::string() : ", failed: " + failed_checks(r)),
          s);
}

void criterion6() {
  const auto t0 = Clock::now();
  const int m = 10, trials = 100;
  const double theta = 0.25;
  int recovered = 0, superset = 0, sound = 0;
  std::uint64_t queries = 0;
  for (int t = 0; t < trials; ++t) {
    auto g = make_stream(6006, t);
    const std::uint32_t ell = draw_bits(g, m);
    const std::vector<Term> tone{{CodewordLabel{SymMatGF2(m), ell, 0}, random_phase(g, 1.0)}};
    DenseOracle s(make_noisy(m, tone, 1.0, g()));
    const double e = s.signal().sq_norm();
    KmParams kp;
    kp.theta = theta;
    kp.delta = 0.01;
    kp.norm_hint = std::sqrt(e);
    kp.allow_dense = false;
    const auto hits = km_list(s, kp, g());
    queries += s.query_count();
    const auto has = [&](std::uint32_t l) {
      return std::any_of(hits.begin(), hits.end(), [&](const KmHit& h) { return h.ell == l; });
    };
    recovered += has(ell);
    bool all = true;
    for (const auto& h : dense_heavy_set(s.signal(), HeavyCode::Rm1, 1 / theta)) all = all && has(h.label.ell);
    superset += all;
    auto w = s.signal().values;
    fwht(w);
    bool ok = true;
    for (const auto& h : hits) ok = ok && std::norm(w[h.ell]) / (1u << m) >= theta / 4 * e;
    sound += ok;
  }
  const double s = since(t0);
  std::ostringstream d;
  d << "m=10 theta=1/4 sampled: planted recovered " << recovered << "/100, superset " << superset
    << "/100, no output below theta/4 " << sound << "/100, mean queries " << queries / trials << " (N=1024)";
  verdict(6, recovered >= 95 && superset >= 95 && sound >= 95 && s < 120, d.str(), s);
}

void criterion7() {
  const auto t0 = Clock::now();
  const int n = 7, k = 10, trials = 100;
  int superset = 0, sound = 0;
  std::size_t max_out = 0, max_width = 0;
  bool dense_mode = true;
  for (int t = 0; t < trials; ++t) {
    auto g = make_stream(7007, t);
    const int count = 1 + static_cast<int>(draw_bits(g, 8) % 3);
    std::vector<Term> terms;
    double signal = 0;
    for (int i = 0; i < count; ++i) {
      const HankelMatrix p(n, g() & ((1u << (2 * n - 1)) - 1));
      const cd c = random_phase(g, 0.5 + 0.5 * uniform01(g));
      terms.push_back({make_label(p, draw_bits(g, n)), c});
      signal += std::norm(c);
    }
    DenseOracle s(make_noisy(n, terms, signal * uniform01(g), g()));  // noise <= half the total
    const double e = s.signal().sq_norm();
    DecoderParams dp;
    dp.k = k;
    dp.norm_hint = std::sqrt(e);
    const auto r = list_decode_hankel(s, dp, g());
    dense_mode = dense_mode && r.stats.dense;
    max_out = std::max(max_out, r.terms.size());
    for (auto f : r.stats.retained) max_width = std::max(max_width, f);
    bool all = true;
    for (const auto& h : dense_heavy_set(s.signal(), HeavyCode::Hankel, k)) {
      const auto hp = as_hankel(h.label.Q);
      all = all && std::any_of(r.terms.begin(), r.terms.end(),
                               [&](const DecodedTerm& x) { return x.P == *hp && x.ell == h.label.ell; });
    }
    superset += all;
    bool ok = true;
    for (const auto& x : r.terms)  // exhaustive dot, independent of the decoder's estimate
      ok = ok && std::norm(estimate_dot(s, make_label(x.P, x.ell), 1u << n, 0)) >= e / (4.0 * k);
    sound += ok;
  }
  const double s = since(t0);
  std::ostringstream d;
  d << "n=7 k=10: superset of exact heavy set " << superset << "/100, all outputs >= ||s||^2/(4k) " << sound
    << "/100; mode=" << (dense_mode ? "dense" : "mixed") << ", max outputs " << max_out << ", max level width "
    << max_width;
  verdict(7, superset >= 95 && sound >= 95 && s < 600, d.str(), s);
}

void criterion8() {
  const auto t0 = Clock::now();
  const int k = 4;
  const std::vector<int> ns{10, 12, 14, 16};
  std::vector<double> q;
  bool below = true, found = true;
  std::ostringstream d;
  for (int n : ns) {
    const auto ctx = FieldContext::standard(n);
    auto g = make_stream(8008, n);
    const auto p = lf_kerdock(ctx, draw_bits(g, n));
    const std::uint32_t ell = draw_bits(g, n);
    PlantedOracle s(n, {{make_label(p, ell), cd(1, 0)}}, 0.0, n);
    DecoderParams dp;
    dp.k = k;
    dp.norm_hint = 1;
    dp.kerdock = ctx;
    const auto r = list_decode_hankel(s, dp, g());
    const auto rp = resolve_params(dp, n);
    found = found && std::any_of(r.terms.begin(), r.terms.end(),
                                 [&](const DecodedTerm& x) { return x.P == p && x.ell == ell; });
    const double N = std::ldexp(1.0, n);
    below = below && r.stats.queries < N / 8;
    q.push_back(static_cast<double>(r.stats.queries));
    d << " n=" << n << ":" << r.stats.queries << "(" << (r.stats.dense ? "dense" : "sampled") << ")";
    char buf[160];
    std::snprintf(buf, sizeof buf, "n=%d planned sampled points=%.3g vs N=%.0f, queries=%llu", n, rp.planned_points, N,
                  static_cast<unsigned long long>(r.stats.queries));
    note(buf);
  }
  // Least-squares slope of log q against log n.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double x = std::log(ns[i]), y = std::log(q[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double m = static_cast<double>(ns.size());
  const double c = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double ratio = q.back() / q.front();
  const bool guard = ratio < std::pow(1.6, 12);
  const double s = since(t0);
  char tail[200];
  std::snprintf(tail, sizeof tail, "; fitted c=%.2f; q(16)/q(10)=%.1f vs guard %.0f %s; queries < N/8: %s; found: %s",
                c, ratio, std::pow(1.6, 12), guard ? "ok" : "exceeded", below ? "yes" : "no", found ? "yes" : "no");
  verdict(8, below && guard && found && s < 600, "k=4 queries:" + d.str() + tail, s);
}

// Greedy best-k over all Kerdock codewords with exact dots.
double greedy_best_k(const DenseSignal& s, const FieldContext& ctx, int k) {
  const auto ks = kerdock_set(ctx);
  const std::uint32_t N = s.size();
  auto res = s.values;
  std::vector<cd> buf(N);
  for (int step = 0; step < k; ++step) {
    double best = -1;
    std::size_t bp = 0;
    std::uint32_t bl = 0;
    cd bc;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      for (std::uint32_t y = 0; y < N; ++y) buf[y] = res[y] * z4_unit(-ks[i].quad_form_z4(y));
      fwht(buf);
      for (std::uint32_t l = 0; l < N; ++l)
        if (std::norm(buf[l]) > best) best = std::norm(buf[l]), bp = i, bl = l, bc = buf[l];
    }
    const auto lab = make_label(ks[bp], bl);
    const cd c = bc / std::sqrt(static_cast<double>(N));
    for (std::uint32_t y = 0; y < N; ++y) res[y] -= c * eval_rm2(lab, y);
  }
  double e = 0;
  for (const auto& v : res) e += std::norm(v);
  return e;
}

double approx_error(const DenseSignal& s, const Representation& r) {
  const auto a = synthesize(s.n, as_terms(r));
  double e = 0;
  for (std::uint32_t y = 0; y < s.size(); ++y) e += std::norm(s.values[y] - a.values[y]);
  return e;
}

std::vector<Term> distinct_kerdock_terms(const FieldContext& ctx, std::mt19937_64& g, std::initializer_list<double> mags) {
  std::vector<Term> out;
  std::vector<std::uint32_t> used;
  for (double c : mags) {
    std::uint32_t top;
    do top = draw_bits(g, ctx.degree());
    while (std::find(used.begin(), used.end(), top) != used.end());
    used.push_back(top);
    out.push_back({make_label(lf_kerdock(ctx, top), draw_bits(g, ctx.degree())), random_phase(g, c)});
  }
  return out;
}

void criterion9() {
  const auto t0 = Clock::now();
  const int n = 9, trials = 100;
  const auto ctx = FieldContext::standard(n);
  const double rootN = std::sqrt(std::ldexp(1.0, n));
  int exact_ok = 0, noisy_ok = 0;
  double worst_exact = 0, worst_ratio = 0;
  for (int t = 0; t < trials; ++t) {
    auto g = make_stream(9009, t);
    DenseOracle s(synthesize(n, distinct_kerdock_terms(ctx, g, {1.0, 0.5, 0.25})));
    PursuitParams pp;
    pp.k = 3;
    pp.eps = 0.05;
    const auto r = sparse_approx(s, ctx, pp, g());
    const double rel = approx_error(s.signal(), r) / s.signal().sq_norm();
    worst_exact = std::max(worst_exact, rel);
    exact_ok += rel <= 0.05;
  }
  const int k2 = 2;
  const double factor = 1 + 0.1 + 6.0 * k2 * k2 / rootN;
  for (int t = 0; t < trials; ++t) {
    auto g = make_stream(9010, t);
    const auto terms = distinct_kerdock_terms(ctx, g, {1.0, 0.6});
    DenseOracle s(make_noisy(n, terms, 0.2, g()));
    PursuitParams pp;
    pp.k = k2;
    pp.eps = 0.05;
    const auto r = sparse_approx(s, ctx, pp, g());
    const double err = approx_error(s.signal(), r);
    const double best = greedy_best_k(s.signal(), ctx, k2);
    worst_ratio = std::max(worst_ratio, err / best);
    noisy_ok += err <= factor * best;
  }
  const double s = since(t0);
  char d[320];
  std::snprintf(d, sizeof d,
                "n=9 exact 3-term, k=3, eps=0.05: rel. error <= 0.05 in %d/100 (worst %.2e); 2 terms + noise 0.2, k=2: "
                "error <= %.3f x greedy best-2 in %d/100 (worst ratio %.3f)",
                exact_ok, worst_exact, factor, noisy_ok, worst_ratio);
  verdict(9, exact_ok >= 95 && noisy_ok >= 95 && s < 600, d, s);
}

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli(const std::string& args) {
  CliRun r;
  FILE* p = popen((std::string(KERDOCK_CLI) + " " + args + " 2>&1").c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void criterion10() {
  const auto t0 = Clock::now();
  const fs::path dir = fs::temp_directory_path() / ("kerdock_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto f = [&](const std::string& name) { return (dir / name).string(); };
  std::ofstream(f("labels.txt")) << "8;Q=7ab3;l=5c;e=1\n8;Q=1f0f;l=3;e=0\n";
  std::ofstream(f("coeffs.txt")) << "1 0\n0.4 -0.3\n";
  // {command, output file or empty for stdout}
  const std::vector<std::pair<std::string, std::string>> runs{
      {"gen-field --n 13", ""},
      {"kerdock gen --n 6", ""},
      {"encode --labels " + f("labels.txt") + " --coeffs " + f("coeffs.txt") + " --out " + f("s.sig"), f("s.sig")},
      {"corrupt --in " + f("s.sig") + " --noise-energy 0.3 --seed 11 --out " + f("n.sig"), f("n.sig")},
      {"decode --in " + f("n.sig") + " --k 4 --seed 12", ""},
      {"decode --plant \"9;Q=1abcd;l=1f;e=2:1,9;Q=3;l=0;e=0:0.5\" --noise-energy 0.2 --k 2 --seed 13 --sampled "
       "--suffix-samples 8 --repeats 3 --km-samples 64 --cap 100000",
       ""},
      {"sparse-approx --in " + f("n.sig") + " --k 2 --eps 0.1 --seed 14 --out " + f("rep.txt"), f("rep.txt")},
      {"verify --suite independence --n 3", ""},
      {"verify --suite dickson --n 5 --trials 3000 --seed 15", ""},
      {"bench --k 4 --n-list 8,10 --trials 2 --seed 16", ""},
  };
  int same = 0;
  std::string differ;
  for (const auto& [cmd, out] : runs) {
    const auto a = cli(cmd);
    const std::string fa = out.empty() ? "" : slurp(out);
    const auto b = cli(cmd);
    const std::string fb = out.empty() ? "" : slurp(out);
    const bool eq = a.code == b.code && a.out == b.out && fa == fb && (a.code >= 0);
    same += eq;
    if (!eq) differ += " [" + cmd + "]";
  }
  fs::remove_all(dir);
  const double s = since(t0);
  verdict(10, same == static_cast<int>(runs.size()),
          std::to_string(same) + "/" + std::to_string(runs.size()) + " CLI invocations byte-identical on rerun" +
              (differ.empty() ? "" : "; differ:" + differ),
          s);
}

}  // namespace

int main() {
  std::cout << "acceptance run" << std::endl;
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
