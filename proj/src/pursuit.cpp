#include "kerdock/pursuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>

#include "kerdock/rng.hpp"

namespace kerdock {

std::vector<Term> as_terms(const Representation& r) {
  std::vector<Term> out;
  for (const auto& t : r.terms) out.push_back({t.label(), t.coef});
  return out;
}

Representation sparse_approx(const SampleOracle& s, const FieldContext& ctx, const PursuitParams& params,
                             std::uint64_t seed) {
  const int n = s.dimension();
  if (ctx.degree() != n) throw std::invalid_argument("field degree differs from signal dimension");
  if (params.k < 1) throw std::invalid_argument("k must be at least 1");
  if (params.eps <= 0 || params.eps >= 1) throw std::invalid_argument("eps must lie in (0, 1)");
  if (params.k > params.c4 * std::sqrt(std::ldexp(1.0, n)))
    throw std::invalid_argument("k too large for the dictionary coherence at this n");
  const int rounds = params.rounds ? params.rounds : static_cast<int>(std::ceil(std::log(1 / params.eps))) + 1;
  const auto def = static_cast<std::size_t>(std::ceil(64.0 * params.k / params.eps));
  const std::size_t norm_samples = params.norm_samples ? params.norm_samples : def;
  const std::size_t dot_samples = params.dot_samples ? params.dot_samples : def;
  const std::uint64_t q0 = s.query_count();

  Representation rep;
  double energy = estimate_sq_norm(s, norm_samples, mix_seed(seed, 0));
  rep.residual_energy.push_back(energy);
  const double floor = 1e-12 * std::max(energy, 1e-300);

  for (int round = 1; round <= rounds && static_cast<int>(rep.terms.size()) < params.k; ++round) {
    if (energy <= floor) break;
    const auto cur = as_terms(rep);
    ResidualOracle residual(s, cur);
    DecoderParams dp = params.decoder;
    dp.k = params.heaviness * params.k;
    dp.norm_hint = std::sqrt(energy);
    dp.kerdock = ctx;
    const auto dec = list_decode_hankel(residual, dp, mix_seed(seed, 3 * round));

    Representation next = rep;
    for (const auto& t : dec.terms) {
      if (static_cast<int>(next.terms.size()) >= params.k) break;
      const bool have = std::any_of(next.terms.begin(), next.terms.end(),
                                    [&](const RepTerm& r) { return r.P == t.P && r.ell == t.ell; });
      if (!have) next.terms.push_back({t.P, t.ell, 0, t.coef});
    }
    if (next.terms.size() == rep.terms.size()) break;

    std::vector<CodewordLabel> labels;
    for (const auto& t : next.terms) labels.push_back(t.label());
    const auto coefs = estimate_dots(s, labels, dot_samples, mix_seed(seed, 3 * round + 1));
    for (std::size_t i = 0; i < coefs.size(); ++i) next.terms[i].coef = coefs[i];

    ResidualOracle after(s, as_terms(next));
    const double e = estimate_sq_norm(after, norm_samples, mix_seed(seed, 3 * round + 2));
    if (e > energy) break;  // keep the residual monotone
    rep.terms = std::move(next.terms);
    energy = e;
    rep.residual_energy.push_back(energy);
  }
  rep.queries = s.query_count() - q0;
  return rep;
}

std::string format_representation(const Representation& r) {
  std::ostringstream os;
  char buf[160];
  for (const auto& t : r.terms) {
    std::snprintf(buf, sizeof buf, "%s %x %d %.17g %.17g\n", t.P.diag_hex().c_str(), t.ell, t.eps,
                  t.coef.real(), t.coef.imag());
    os << buf;
  }
  return os.str();
}

Representation parse_representation(std::istream& is, int n) {
  Representation r;
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string p, l;
    int eps = 0;
    double re = 0, im = 0;
    if (!(ls >> p >> l >> eps >> re >> im) || eps < 0 || eps > 3)
      throw std::invalid_argument("bad representation line: " + line);
    RepTerm t;
    t.P = HankelMatrix::from_diag_hex(n, p);
    t.ell = static_cast<std::uint32_t>(std::stoul(l, nullptr, 16));
    if (t.ell >> n) throw std::invalid_argument("linear term too wide: " + line);
    t.eps = eps;
    t.coef = {re, im};
    r.terms.push_back(t);
  }
  return r;
}

}  // namespace kerdock
