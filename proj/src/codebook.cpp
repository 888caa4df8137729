#include "kerdock/codebook.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kerdock {

namespace {

std::uint64_t parse_hex(const std::string& s, const char* what) {
  if (s.empty()) throw std::invalid_argument(std::string("empty ") + what);
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used, 16);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("bad ") + what + ": " + s);
  }
  if (used != s.size()) throw std::invalid_argument(std::string("bad ") + what + ": " + s);
  return v;
}

std::string to_hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

}  // namespace

HankelMatrix::HankelMatrix(int n, std::uint64_t diag) : n_(n), diag_(diag) {
  if (n < 1 || n > kMaxMatrixDim) throw std::invalid_argument("Hankel dimension out of range");
  const int bits = 2 * n - 1;
  if (bits < 64 && (diag >> bits)) throw std::invalid_argument("Hankel anti-diagonal has extra bits");
}

std::uint32_t HankelMatrix::row(int j) const {
  const std::uint64_t mask = n_ == 32 ? 0xffffffffull : (std::uint64_t{1} << n_) - 1;
  return static_cast<std::uint32_t>((diag_ >> j) & mask);
}

SymMatGF2 HankelMatrix::to_sym() const {
  BitMatrix m(n_);
  for (int j = 0; j < n_; ++j) m.set_row(j, row(j));
  return SymMatGF2(m);
}

HankelMatrix HankelMatrix::prefix(int j) const {
  if (j < 1 || j > n_) throw std::invalid_argument("prefix size out of range");
  const int bits = 2 * j - 1;
  return HankelMatrix(j, diag_ & ((std::uint64_t{1} << bits) - 1));
}

int HankelMatrix::quad_form_z4(std::uint32_t y) const {
  int s = 0;
  for (std::uint32_t t = y; t; t &= t - 1) s += std::popcount(row(std::countr_zero(t)) & y);
  return s & 3;
}

std::string HankelMatrix::diag_hex() const { return to_hex(diag_); }

HankelMatrix HankelMatrix::from_diag_hex(int n, const std::string& hex) {
  return HankelMatrix(n, parse_hex(hex, "anti-diagonal"));
}

std::optional<HankelMatrix> as_hankel(const SymMatGF2& q) {
  const int n = q.dim();
  if (n < 1) return std::nullopt;
  std::uint64_t diag = 0;
  for (int m = 0; m < 2 * n - 1; ++m) {
    const int j = m < n ? 0 : m - n + 1;
    diag |= static_cast<std::uint64_t>(q.get(j, m - j)) << m;
  }
  HankelMatrix h(n, diag);
  if (!(h.to_sym() == q)) return std::nullopt;
  return h;
}

CodewordLabel make_label(const HankelMatrix& p, std::uint32_t ell, int eps) {
  return CodewordLabel{p.to_sym(), ell, eps & 3};
}

cd z4_unit(int e) {
  static const std::array<cd, 4> units = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};
  return units[e & 3];
}

int codeword_exponent(const CodewordLabel& label, std::uint32_t y) {
  return (label.Q.quad_form_z4(y) + 2 * std::popcount(label.ell & y) + label.eps) & 3;
}

cd eval_rm2(const CodewordLabel& label, std::uint32_t y) {
  return z4_unit(codeword_exponent(label, y)) / std::sqrt(static_cast<double>(1u << label.n()));
}

std::string format_label(const CodewordLabel& label) {
  std::ostringstream os;
  os << label.n() << ";Q=";
  if (auto h = as_hankel(label.Q))
    os << h->diag_hex();
  else
    os << label.Q.to_rows_hex();
  os << ";l=" << to_hex(label.ell) << ";e=" << label.eps;
  return os.str();
}

CodewordLabel parse_label(const std::string& text) {
  std::istringstream is(text);
  std::string ns, qs, ls, es;
  if (!std::getline(is, ns, ';') || !std::getline(is, qs, ';') || !std::getline(is, ls, ';') ||
      !std::getline(is, es))
    throw std::invalid_argument("bad label: " + text);
  if (qs.rfind("Q=", 0) != 0 || ls.rfind("l=", 0) != 0 || es.rfind("e=", 0) != 0)
    throw std::invalid_argument("bad label fields: " + text);
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(ns, &used);
    if (used != ns.size()) throw std::invalid_argument("n");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad label dimension: " + text);
  }
  if (n < 1 || n > kMaxFieldDegree) throw std::invalid_argument("label dimension out of range: " + text);
  CodewordLabel label;
  const std::string q = qs.substr(2);
  if (q.find('.') != std::string::npos || n == 1)
    label.Q = SymMatGF2::from_rows_hex(n, q);
  else
    label.Q = HankelMatrix::from_diag_hex(n, q).to_sym();
  const auto ell = parse_hex(ls.substr(2), "linear term");
  if (ell >> n) throw std::invalid_argument("linear term too wide: " + text);
  label.ell = static_cast<std::uint32_t>(ell);
  const std::string e = es.substr(2);
  if (e.size() != 1 || e[0] < '0' || e[0] > '3') throw std::invalid_argument("bad phase: " + text);
  label.eps = e[0] - '0';
  return label;
}

HankelMatrix lf_kerdock(const FieldContext& ctx, std::uint32_t top_row) {
  const int n = ctx.degree();
  if (top_row >> n) throw std::invalid_argument("top row wider than n");
  std::uint64_t diag = top_row;
  const std::uint64_t h = ctx.poly_low();
  for (int j = n; j < 2 * n - 1; ++j) {
    const std::uint64_t window = (diag >> (j - n)) & ctx.mask();
    diag |= static_cast<std::uint64_t>(std::popcount(window & h) & 1) << j;
  }
  return HankelMatrix(n, diag);
}

HankelMatrix trace_kerdock(const FieldContext& ctx, FieldElement alpha) {
  const int n = ctx.degree();
  std::uint64_t diag = 0;
  FieldElement x = alpha;
  for (int m = 0; m < 2 * n - 1; ++m) {
    diag |= static_cast<std::uint64_t>(ctx.trace(x)) << m;
    x = ctx.mul(x, ctx.xi());
  }
  return HankelMatrix(n, diag);
}

std::vector<HankelMatrix> kerdock_set(const FieldContext& ctx) {
  std::vector<HankelMatrix> out;
  out.reserve(ctx.size());
  for (std::uint32_t top = 0; top < ctx.size(); ++top) out.push_back(lf_kerdock(ctx, top));
  return out;
}

bool is_kerdock_prefix(const FieldContext& ctx, std::uint64_t diag, int bits) {
  const int n = ctx.degree();
  const std::uint64_t h = ctx.poly_low();
  for (int j = n; j < bits; ++j) {
    const std::uint64_t window = (diag >> (j - n)) & ctx.mask();
    if (static_cast<std::uint64_t>(std::popcount(window & h) & 1) != ((diag >> j) & 1u)) return false;
  }
  return true;
}

bool check_commute(const FieldContext& ctx, const HankelMatrix& p) {
  const int n = ctx.degree();
  if (p.dim() != n) throw std::invalid_argument("matrix size differs from field degree");
  const BitMatrix m = p.to_sym().matrix();
  const FieldElement y = ctx.xi();
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const FieldElement x{1u << j}, z{1u << k};
      if (m.bilinear(x.bits, ctx.mul(y, z).bits) != m.bilinear(ctx.mul(x, y).bits, z.bits))
        return false;
    }
  return true;
}

std::pair<int, int> gray_map(int z4) {
  switch (z4 & 3) {
    case 0: return {0, 0};
    case 1: return {0, 1};
    case 2: return {1, 1};
    default: return {1, 0};
  }
}

std::vector<std::uint8_t> gray_map(std::span<const std::uint8_t> word) {
  std::vector<std::uint8_t> out;
  out.reserve(2 * word.size());
  for (auto z : word) {
    if (z > 3) throw std::invalid_argument("symbol outside Z4");
    auto [a, b] = gray_map(z);
    out.push_back(static_cast<std::uint8_t>(a));
    out.push_back(static_cast<std::uint8_t>(b));
  }
  return out;
}

std::pair<int, int> gray_map_unit(cd unit) {
  int e = -1;
  for (int k = 0; k < 4; ++k)
    if (std::abs(unit - z4_unit(k)) < 1e-9) e = k;
  if (e < 0) throw std::invalid_argument("value is not a fourth root of unity");
  auto [a, b] = gray_map(e);
  return {1 - 2 * a, 1 - 2 * b};
}

std::vector<std::uint8_t> gray_image(const CodewordLabel& label) {
  const std::uint32_t size = 1u << label.n();
  std::vector<std::uint8_t> out(2 * size);
  for (std::uint32_t y = 0; y < size; ++y) {
    auto [a, b] = gray_map(codeword_exponent(label, y));
    out[(y << 1) | 0] = static_cast<std::uint8_t>(a);
    out[(y << 1) | 1] = static_cast<std::uint8_t>(b);
  }
  return out;
}

SymMatGF2 z4_to_z2_label(const SymMatGF2& q) {
  const int n = q.dim();
  const std::uint32_t d = q.diagonal();
  SymMatGF2 m(n + 1);
  for (int i = 0; i < n; ++i) {
    const int di = (d >> i) & 1;
    m.set(0, i + 1, di);
    for (int k = i + 1; k < n; ++k) m.set(i + 1, k + 1, (di & (d >> k) & 1) ^ q.get(i, k));
  }
  return m;
}

cd pair_dot(const CodewordLabel& a, const CodewordLabel& b) {
  if (a.n() != b.n()) throw std::invalid_argument("labels of different length");
  const std::uint32_t size = 1u << a.n();
  std::array<long long, 4> count{};
  for (std::uint32_t y = 0; y < size; ++y)
    ++count[(codeword_exponent(a, y) - codeword_exponent(b, y)) & 3];
  return cd(static_cast<double>(count[0] - count[2]), static_cast<double>(count[1] - count[3])) /
         static_cast<double>(size);
}

}  // namespace kerdock
