#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "spikebasis/bases.hpp"

namespace spikebasis::verify {

using nlohmann::json;

enum class Status { confirmed, violated, inconclusive };
std::string_view to_string(Status status);

struct VerificationReport {
  std::string claim_id;
  Status status = Status::inconclusive;
  std::optional<json> witness;  ///< required when violated
  json details = json::object();
  // Headline comparison for the summary table.
  double observed = 0.0;
  double expected = 0.0;
  double tol = 0.0;
};

json to_json(const VerificationReport& report);
void write_jsonl(std::ostream& out, const std::vector<VerificationReport>& reports);
void write_summary_csv(std::ostream& out, const std::vector<VerificationReport>& reports);

/// Σ_i H(Y_i) for the spike process, computed by transforming every outcome
/// and grouping sorted coordinate values; shares no code with the
/// row-classification path.
double entropy_oracle(const Basis& basis, int n);

/// Exhaustive check over every Haar-Walsh tree basis, 1 ≤ n0 ≤ 5.
VerificationReport verify_thm1(int n0);
/// Closed-form optima in O(n) plus randomized search, 2 ≤ n ≤ 8.
VerificationReport verify_thm2(int n, int trials, std::uint64_t seed);
/// Random admissible GL pairs, 2 ≤ n ≤ 16.
VerificationReport verify_thm3(int n, int draws, std::uint64_t seed);
/// Covariance spectrum and the DC-vector characterization, n ≤ n_max.
VerificationReport verify_prop1(int n_max, int completions, std::uint64_t seed);
/// Standard basis minimizes C_p over tree bases and in a random O(n) search.
VerificationReport verify_prop2(int n0, double p, int trials, std::uint64_t seed);
/// Householder C_0 = n on [n_lo, n_hi], C_1 = 3 − 4/n, C_{1/2} growth.
VerificationReport verify_prop3(int n_lo, int n_hi);
/// Both mutual-information sequences increase towards log e.
VerificationReport verify_cor1(int n_max);
/// 2-D uniform data: C_1 prefers 45°, the entropy cost prefers 0°.
VerificationReport verify_counterexample(int samples, double step_degrees, std::uint64_t seed);

/// Parent/children entropy inequalities of the spike process, 3 ≤ n0 ≤ n0_max.
VerificationReport verify_lemma1(int n0_max);
/// Entropy bound over every composition of n into k ≥ 3 parts, 4 ≤ n ≤ n_max.
VerificationReport verify_lemma2(int n_max);
/// The two-part merging inequality for all p1 ≤ p2, p1 + p2 ≤ n ≤ n_max.
VerificationReport verify_lemma_a1(int n_max);
/// (2/n) f(1/n) < f(2/n) − f(1/n) exactly for n ≥ 6, reversed for n ∈ {3,4,5}.
VerificationReport verify_lemma4_crossover(int n_max);
/// With a constant row present, two (1, n−1) rows cannot be orthogonal:
/// the best achievable inner product is 1/(n−1).
VerificationReport verify_lemma5(int n_max);
/// Signed permutations of the standard and Householder bases canonicalize
/// back to exactly one of the two.
VerificationReport verify_lemma6(int n_max, int shuffles, std::uint64_t seed);
/// Pruning equals the exhaustive minimum, n0 ∈ {1..4}.
VerificationReport verify_bestbasis_oracle(int vectors, std::uint64_t seed);
/// entropy_oracle agrees with entropy_exact_discrete on random matrices, n ∈ {2..8}.
VerificationReport verify_entropy_oracle(int matrices, std::uint64_t seed);

/// Claim groups accepted by run_claim.
std::vector<std::string> claim_names();

/// Runs one claim group with default parameters ("all" runs every group
/// plus the lemma checks).
std::vector<VerificationReport> run_claim(std::string_view claim, std::uint64_t seed);

}  // namespace spikebasis::verify
