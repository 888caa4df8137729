// Command-line front end: field tables, Kerdock sets, synthetic signals, decoding.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kerdock/codebook.hpp"
#include "kerdock/field.hpp"
#include "kerdock/hankel_decoder.hpp"
#include "kerdock/oracle.hpp"
#include "kerdock/pursuit.hpp"
#include "kerdock/rng.hpp"
#include "kerdock/signal.hpp"

using namespace kerdock;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

cd parse_complex(std::string s) {
  auto fail = [&] { return UsageError("bad coefficient: " + s); };
  if (s.empty()) throw fail();
  std::size_t used = 0;
  if (s.back() != 'i') {
    const double re = std::stod(s, &used);
    if (used != s.size()) throw fail();
    return {re, 0};
  }
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  if (split == std::string::npos) {
    const double im = std::stod(s, &used);
    if (used != s.size()) throw fail();
    return {0, im};
  }
  const std::string a = s.substr(0, split), b = s.substr(split);
  const double re = std::stod(a, &used);
  if (used != a.size()) throw fail();
  const double im = b == "+" ? 1.0 : b == "-" ? -1.0 : std::stod(b, &used);
  if (b.size() > 1 && used != b.size()) throw fail();
  return {re, im};
}

std::vector<Term> parse_plant(const std::string& list) {
  std::vector<Term> terms;
  std::istringstream is(list);
  std::string item;
  while (std::getline(is, item, ',')) {
    const auto colon = item.rfind(':');
    if (colon == std::string::npos) throw UsageError("plant entry needs label:coeff: " + item);
    terms.push_back({parse_label(item.substr(0, colon)), parse_complex(item.substr(colon + 1))});
  }
  if (terms.empty()) throw UsageError("empty plant list");
  for (const auto& t : terms)
    if (t.label.n() != terms.front().label.n()) throw UsageError("planted labels differ in n");
  return terms;
}

DenseSignal load_signal(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return read_signal(in);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string signal_text(const DenseSignal& s) {
  std::ostringstream os;
  write_signal(os, s);
  return os.str();
}

std::string bits_row(std::uint32_t row, int n) {
  std::string s;
  for (int k = 0; k < n; ++k) s += ((row >> k) & 1u) ? '1' : '0';
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kerdock and Hankel codes: construction, synthesis and sublinear list decoding"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP thread count (0 = runtime default)");

  // gen-field
  auto* gf = app.add_subcommand("gen-field", "Print or validate primitive polynomials");
  int gf_n = 0;
  std::string gf_h;
  gf->add_option("--n", gf_n, "degree (omit for the whole table)");
  gf->set_help_flag("--help", "Print this help message and exit");
  gf->add_option("--h", gf_h, "coefficients h_0..h_n to validate, e.g. \"1 0 1 1\"");

  // kerdock gen
  auto* kd = app.add_subcommand("kerdock", "Kerdock matrix sets");
  kd->require_subcommand(1);
  auto* kgen = kd->add_subcommand("gen", "List Kerdock matrices as top-row and anti-diagonal hex");
  int kg_n = 3;
  std::string kg_top;
  kgen->add_option("--n", kg_n, "dimension")->required();
  kgen->add_option("--top-row", kg_top, "only this top row (hex), printing its rows");

  // encode
  auto* enc = app.add_subcommand("encode", "Synthesize a dense signal from labels and coefficients");
  std::string enc_labels, enc_coeffs, enc_out;
  enc->add_option("--labels", enc_labels, "file with one label per line")->required();
  enc->add_option("--coeffs", enc_coeffs, "file with one 're im' per line (default all 1)");
  enc->add_option("--out", enc_out, "output signal file (default stdout)");

  // corrupt
  auto* cor = app.add_subcommand("corrupt", "Add Gaussian noise of a given energy");
  std::string cor_in, cor_out;
  double cor_energy = 0;
  std::uint64_t cor_seed = 1;
  cor->add_option("--in", cor_in, "input signal file")->required();
  cor->add_option("--noise-energy", cor_energy, "noise energy")->required();
  cor->add_option("--seed", cor_seed, "seed");
  cor->add_option("--out", cor_out, "output signal file (default stdout)");

  // decode
  auto* dec = app.add_subcommand("decode", "List-decode heavy Hankel (or Kerdock) codewords");
  std::string dec_in, dec_plant, dec_code = "hankel";
  double dec_hint = 0, dec_noise = 0;
  DecoderParams dp;
  std::uint64_t dec_seed = 1;
  bool dec_timing = false, dec_sampled = false;
  auto* opt_in = dec->add_option("--in", dec_in, "dense signal file");
  auto* opt_plant = dec->add_option("--plant", dec_plant, "implicit signal: label:coeff,...");
  opt_in->excludes(opt_plant);
  dec->add_option("--noise-energy", dec_noise, "noise energy for --plant");
  dec->add_option("--k", dp.k, "heaviness parameter")->required();
  dec->add_option("--norm-hint", dec_hint, "||s|| (default: exact for files, sum |c|^2 + noise for plants)");
  dec->add_option("--seed", dec_seed, "seed");
  dec->add_option("--code", dec_code, "hankel or kerdock")->check(CLI::IsMember({"hankel", "kerdock"}));
  dec->add_option("--c1", dp.c1, "suffix fraction slack");
  dec->add_option("--c2", dp.c2, "per-suffix threshold slack");
  dec->add_option("--delta", dp.delta, "failure probability");
  dec->add_option("--cap", dp.candidate_cap, "candidate cap (default 64 k^3)");
  dec->add_option("--suffix-samples", dp.suffix_samples, "suffixes per repeat");
  dec->add_option("--repeats", dp.repeats, "repeats");
  dec->add_option("--km-samples", dp.km_samples, "pairs per prefix level inside a suffix");
  dec->add_flag("--sampled", dec_sampled, "never fall back to reading the whole signal");
  dec->add_flag("--timing", dec_timing, "append wall-clock seconds");

  // sparse-approx
  auto* spa = app.add_subcommand("sparse-approx", "Greedy k-term Kerdock approximation");
  std::string spa_in, spa_out;
  PursuitParams pp;
  std::uint64_t spa_seed = 1;
  spa->add_option("--in", spa_in, "dense signal file")->required();
  spa->add_option("--k", pp.k, "terms")->required();
  spa->add_option("--eps", pp.eps, "target relative error");
  spa->add_option("--seed", spa_seed, "seed");
  spa->add_option("--out", spa_out, "representation file (default stdout)");

  // verify
  auto* ver = app.add_subcommand("verify", "Exhaustive checks on small instances");
  std::string ver_suite = "all";
  int ver_n = 0;
  std::size_t ver_trials = 10000;
  std::uint64_t ver_seed = 1;
  ver->add_option("--suite", ver_suite,
                 "field|kerdock|homomorphism|dickson|independence|rank-count|contributions|incoherence|all"
                 " (construction = kerdock + homomorphism, rank = rank-count)")
      ->check(CLI::IsMember({"field", "kerdock", "homomorphism", "construction", "dickson", "independence",
                             "rank-count", "rank", "contributions", "incoherence", "all"}));
  ver->add_option("--n", ver_n, "single dimension (default: the suite's range)");
  ver->add_option("--trials", ver_trials, "random trials for sampled suites");
  ver->add_option("--seed", ver_seed, "seed");

  // bench
  auto* ben = app.add_subcommand("bench", "Query counts of the decoder on planted Kerdock codewords");
  int ben_k = 4, ben_trials = 3;
  std::vector<int> ben_ns{10, 12, 14, 16};
  std::uint64_t ben_seed = 1;
  std::string ben_code = "kerdock";
  bool ben_timing = false;
  ben->add_option("--k", ben_k, "heaviness parameter");
  ben->add_option("--n-list", ben_ns, "dimensions")->delimiter(',');
  ben->add_option("--trials", ben_trials, "trials per n");
  ben->add_option("--seed", ben_seed, "seed");
  ben->add_option("--code", ben_code, "hankel or kerdock")->check(CLI::IsMember({"hankel", "kerdock"}));
  ben->add_flag("--timing", ben_timing, "append wall-clock seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  try {
    if (*gf) {
      if (!gf_h.empty()) {
        if (gf_n < 1) throw UsageError("--h needs --n");
        const auto [n, h] = parse_poly_line(std::to_string(gf_n) + ": " + gf_h);
        const bool ok = is_primitive(h, n);
        std::cout << format_poly_line(n, h) << (ok ? " primitive\n" : " not-primitive\n");
        return ok ? 0 : 1;
      }
      const auto table = primitive_table();
      if (gf_n) {
        if (gf_n < 1 || gf_n > kMaxFieldDegree) throw UsageError("--n out of range");
        std::cout << format_poly_line(gf_n, table[gf_n - 1]) << '\n';
      } else {
        for (std::size_t i = 0; i < table.size(); ++i)
          std::cout << format_poly_line(static_cast<int>(i) + 1, table[i]) << '\n';
      }
      return 0;
    }

    if (*kgen) {
      if (kg_n < 1 || kg_n > kMaxFieldDegree) throw UsageError("--n out of range");
      const auto ctx = FieldContext::standard(kg_n);
      if (!kg_top.empty()) {
        const auto top = static_cast<std::uint32_t>(std::stoul(kg_top, nullptr, 16));
        if (top >> kg_n) throw UsageError("top row wider than n");
        const auto p = lf_kerdock(ctx, top);
        std::cout << std::hex << top << ' ' << p.diag_hex() << std::dec << '\n';
        for (int j = 0; j < kg_n; ++j) std::cout << bits_row(p.row(j), kg_n) << '\n';
        return 0;
      }
      if (kg_n > 16) throw UsageError("listing limited to n <= 16");
      for (std::uint32_t top = 0; top < ctx.size(); ++top)
        std::cout << std::hex << top << ' ' << lf_kerdock(ctx, top).diag_hex() << std::dec << '\n';
      return 0;
    }

    if (*enc) {
      std::ifstream lf(enc_labels);
      if (!lf) throw UsageError("cannot open " + enc_labels);
      std::vector<Term> terms;
      std::string line;
      while (std::getline(lf, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) terms.push_back({parse_label(line), cd(1, 0)});
      if (terms.empty()) throw UsageError("no labels");
      if (!enc_coeffs.empty()) {
        std::ifstream cf(enc_coeffs);
        if (!cf) throw UsageError("cannot open " + enc_coeffs);
        for (auto& t : terms) {
          double re = 0, im = 0;
          if (!(cf >> re >> im)) throw UsageError("fewer coefficients than labels");
          t.coef = {re, im};
        }
      }
      emit(enc_out, signal_text(synthesize(terms.front().label.n(), terms)));
      return 0;
    }

    if (*cor) {
      auto s = load_signal(cor_in);
      DenseSignal noise = make_noisy(s.n, {}, cor_energy, cor_seed);
      for (std::uint32_t y = 0; y < s.size(); ++y) s.values[y] += noise.values[y];
      emit(cor_out, signal_text(s));
      return 0;
    }

    if (*dec) {
      std::unique_ptr<SampleOracle> oracle;
      double hint = dec_hint;
      if (!dec_in.empty()) {
        auto s = load_signal(dec_in);
        if (hint <= 0) hint = std::sqrt(s.sq_norm());
        oracle = std::make_unique<DenseOracle>(std::move(s));
      } else if (!dec_plant.empty()) {
        auto terms = parse_plant(dec_plant);
        const int n = terms.front().label.n();
        if (hint <= 0) {
          double e = dec_noise;
          for (const auto& t : terms) e += std::norm(t.coef);
          hint = std::sqrt(e);
        }
        oracle = std::make_unique<PlantedOracle>(n, std::move(terms), dec_noise, dec_seed);
      } else {
        throw UsageError("decode needs --in or --plant");
      }
      dp.norm_hint = hint;
      dp.allow_dense = !dec_sampled;
      if (dec_code == "kerdock") dp.kerdock = FieldContext::standard(oracle->dimension());
      const auto res = list_decode_hankel(*oracle, dp, dec_seed);
      std::cout << format_report(res, dec_timing);
      return 0;
    }

    if (*spa) {
      const DenseOracle s(load_signal(spa_in));
      const auto ctx = FieldContext::standard(s.dimension());
      const auto rep = sparse_approx(s, ctx, pp, spa_seed);
      emit(spa_out, format_representation(rep));
      return 0;
    }

    if (*ver) {
      OracleReport rep;
      auto dims = [&](int lo, int hi) {
        std::vector<int> v;
        if (ver_n)
          v.push_back(ver_n);
        else
          for (int n = lo; n <= hi; ++n) v.push_back(n);
        return v;
      };
      const bool all = ver_suite == "all";
      const auto want = [&](std::initializer_list<const char*> names) {
        if (all) return true;
        for (const char* nm : names)
          if (ver_suite == nm) return true;
        return false;
      };
      if (want({"field"})) {
        rep.merge(verify_field_table());
        for (int n : dims(1, 16)) rep.merge(verify_field(FieldContext::standard(n)));
      }
      if (want({"kerdock", "construction"})) {
        for (int n : ver_n ? dims(0, 0) : std::vector<int>{3, 5, 7, 9})
          rep.merge(verify_kerdock_set(FieldContext::standard(n)));
        for (int n : dims(1, 6))
          if (n <= 6) rep.merge(verify_commute_equivalence(FieldContext::standard(n)));
      }
      if (want({"homomorphism", "construction"})) {
        for (int n : dims(1, 8))
          if (n <= 8) rep.merge(verify_homomorphism(FieldContext::standard(n)));
      }
      if (want({"dickson"}))
        for (int n : dims(4, 6)) rep.merge(verify_dickson(n, ver_trials, ver_seed));
      if (want({"independence"})) {
        for (int n : dims(3, 4)) {
          const auto prof = independence_profile(FieldContext::standard(n));
          std::ostringstream os;
          os << "n=" << n << " 3-wise=" << prof.three_wise << " 3.5-wise=" << prof.three_half_wise
             << " 4-wise=" << prof.four_wise << " gray-4-wise=" << prof.gray_four_wise;
          if (!prof.witness.empty()) os << " witness: " << prof.witness;
          rep.notes.push_back(os.str());
          const bool odd = n % 2;
          rep.add("independence n=" + std::to_string(n),
                  prof.three_wise && prof.three_half_wise == odd && !prof.four_wise && (!odd || prof.gray_four_wise));
        }
      }
      if (want({"rank-count", "rank"}))
        for (int n : dims(4, 8)) rep.merge(verify_rank_histogram(n));
      if (want({"contributions"}))
        for (int n : dims(6, 7)) rep.merge(verify_small_contributions(n, 4, 20, ver_seed));
      if (want({"incoherence"}))
        for (int n : ver_n ? dims(0, 0) : std::vector<int>{6, 8}) rep.merge(verify_incoherent_heavy(n, 20, ver_seed));
      std::cout << rep.text();
      return rep.all_pass() ? 0 : 1;
    }

    if (*ben) {
      std::vector<double> xs, ys;
      for (int n : ben_ns) {
        if (n < 2 || n > kMaxFieldDegree) throw UsageError("bench n out of range");
        const auto ctx = FieldContext::standard(n);
        double total = 0, secs = 0;
        int found = 0;
        for (int t = 0; t < ben_trials; ++t) {
          auto g = make_stream(ben_seed, static_cast<std::uint64_t>(n) * 1000 + t);
          const auto p = lf_kerdock(ctx, draw_bits(g, n));
          const auto ell = draw_bits(g, n);
          PlantedOracle s(n, {{make_label(p, ell), cd(1, 0)}}, 0.0, ben_seed);
          DecoderParams bp;
          bp.k = ben_k;
          bp.norm_hint = 1.0;
          if (ben_code == "kerdock") bp.kerdock = ctx;
          const auto res = list_decode_hankel(s, bp, mix_seed(ben_seed, t));
          total += static_cast<double>(res.stats.queries);
          secs += res.stats.seconds;
          for (const auto& term : res.terms) found += term.P == p && term.ell == ell;
        }
        const double mean = total / ben_trials;
        xs.push_back(std::log(n));
        ys.push_back(std::log(mean));
        char buf[200];
        std::snprintf(buf, sizeof buf, "n=%d queries=%.1f fraction=%.4f found=%d/%d", n, mean,
                      mean / std::ldexp(1.0, n), found, ben_trials);
        std::cout << buf;
        if (ben_timing) {
          std::snprintf(buf, sizeof buf, " seconds=%.3f", secs / ben_trials);
          std::cout << buf;
        }
        std::cout << '\n';
      }
      if (xs.size() >= 2) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
        mx /= xs.size();
        my /= ys.size();
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
        char buf[80];
        std::snprintf(buf, sizeof buf, "fit queries ~ n^c with c=%.3f\n", sxy / sxx);
        std::cout << buf;
      }
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
