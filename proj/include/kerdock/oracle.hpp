// Exhaustive references and verification suites for small n.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kerdock/codebook.hpp"
#include "kerdock/field.hpp"
#include "kerdock/signal.hpp"

namespace kerdock {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct OracleReport {
  std::vector<std::string> notes;
  std::vector<CheckResult> checks;

  void add(std::string name, bool pass, std::string detail = {});
  void merge(const OracleReport& other);
  bool all_pass() const;
  // Notes, then one "CHECK <name> PASS|FAIL <detail>" line per check.
  std::string text() const;
};

enum class HeavyCode { Rm1, Rm2, Hankel, Kerdock };

struct HeavyEntry {
  CodewordLabel label;
  cd dot;  // <s, phi>
};

// All (Q, l) of the code with |<s, phi_{Q,l,0}>|^2 >= ||s||^2 / k, largest first.
// Rm2 enumerates every symmetric Q and is limited to n <= 5; Kerdock needs ctx.
std::vector<HeavyEntry> dense_heavy_set(const DenseSignal& s, HeavyCode code, double k,
                                        const FieldContext* ctx = nullptr);

// hist[r] = number of n x n Hankel matrices of rank r.
std::vector<std::uint64_t> count_hankel_by_rank(int n);

namespace serial {
std::vector<HeavyEntry> dense_heavy_set(const DenseSignal& s, HeavyCode code, double k,
                                        const FieldContext* ctx = nullptr);
std::vector<std::uint64_t> count_hankel_by_rank(int n);
}  // namespace serial

// Trace image and balance, trace linearity (n <= 10), square roots (n <= 12).
OracleReport verify_field(const FieldContext& ctx);
// Every built-in polynomial passes the primitivity test.
OracleReport verify_field_table();
// Pairwise full rank, commutation, trace form equals recurrence form.
OracleReport verify_kerdock_set(const FieldContext& ctx);
// Over all Hankel matrices (n <= 6): recurrence <=> square-root identity <=> commutation.
OracleReport verify_commute_equivalence(const FieldContext& ctx);
// K_x J K_y J = K_{xy} J with J = K_1^{-1}, and additivity (n <= 8).
OracleReport verify_homomorphism(const FieldContext& ctx);
// |<phi1, phi2>| in {0, 2^{-R/2}}, and = 2^{-R/2} when the linear terms agree.
OracleReport verify_dickson(int n, std::size_t trials, std::uint64_t seed);

struct IndependenceProfile {
  bool three_wise = false;
  bool three_half_wise = false;
  bool four_wise = false;
  bool gray_four_wise = false;
  std::string witness;  // first violation found, if any
};
// Exhaustive over the whole Z4 Kerdock code (n <= 5).
IndependenceProfile independence_profile(const FieldContext& ctx);

// Cumulative rank counts against 2^{4r}.
OracleReport verify_rank_histogram(int n);

// For a planted (1/k)-heavy codeword, at every level j at least 2^{n-j}/(4k)
// suffixes carry restricted correlation >= 2^{j-n} ||s|| / sqrt(4k).
OracleReport verify_small_contributions(int n, int k, int trials, std::uint64_t seed);

// Kerdock dictionaries: at most 4k codewords are (1/k)-heavy when 2^{-n/2} k <= 1/6.
OracleReport verify_incoherent_heavy(int n, int trials, std::uint64_t seed);

}  // namespace kerdock
