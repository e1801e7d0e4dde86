#pragma once

// Brute-force checks of enrichment results against the two correctness
// constraints, plus the seeded generator that feeds them.
//
// The checks only look at nets and traces. They never call into the merge
// engine, so they stay usable as an independent judge of its output.

#include <cstdint>
#include <string>
#include <vector>

#include "cpnet/merge.hpp"
#include "cpnet/model.hpp"

namespace cpnet {

struct GeneratorParams {
	int feature_count = 3;
	int min_domain = 2;
	int max_domain = 3;
	double relation_density = 0.7;          // chance that a parent assignment gets a row
	double indifference_probability = 0.1;  // chance that adjacent values share a level
	std::uint64_t seed = 0;
};

/// Throws std::invalid_argument on non-positive counts, an inverted domain
/// range or fractions outside [0, 1].
void check_params(const GeneratorParams& params);

/// A valid, acyclic net with features A, B, ... Each feature draws up to two
/// parents among the features before it in a random topological order and
/// gets one row per parent assignment with probability relation_density.
/// Deterministic in params.
CPNet generate_net(const GeneratorParams& params);

struct ConstraintReport {
	std::vector<Fact> constraint1_violations;  // strict facts of N missing from the result
	std::vector<Fact> constraint2_violations;  // uncertified strict facts of N' missing from the result

	bool passed() const { return constraint1_violations.empty() && constraint2_violations.empty(); }
};

/// Constraint 1: every strict fact of unfolded N holds in the unfolded
/// result. Constraint 2: every strict fact of unfolded N' holds in the
/// result, is opposed by an N fact on the same pair under the same
/// condition, or involves a value the trace reports as skipped or tied.
ConstraintReport check_enrichment(const CPNet& initial, const CPNet& reference, const CPNet& result,
				  const MergeTrace& trace);

struct TrialFailure {
	std::uint64_t seed;
	std::string check;
	std::string detail;
};

struct SuiteSummary {
	std::size_t trials = 0;
	std::size_t enrich_errors = 0;
	std::size_t constraint1_failures = 0;
	std::size_t constraint2_failures = 0;
	std::size_t roundtrip_failures = 0;
	std::size_t self_enrich_failures = 0;
	std::size_t empty_net_failures = 0;
	std::vector<TrialFailure> failures;  // reproducer seeds

	std::size_t total_failures() const;
	/// `key value` lines followed by one `FAIL seed check detail` line per failure.
	std::string str() const;
	SuiteSummary& operator+=(const SuiteSummary& other);
};

/// Runs every check on one (N, N') pair and adds the outcome to `summary`.
void run_trial(const CPNet& initial, const CPNet& reference, std::uint64_t seed, SuiteSummary& summary);

/// `trials` random pairs. Trial t uses seed params.seed + t; each net of the
/// pair draws its own feature count in [2, params.feature_count].
SuiteSummary property_suite(const GeneratorParams& params, int trials);

/// Every acyclic net over A{a1,a2}, B{b1,b2} whose CPT rows are strict
/// two-value chains.
std::vector<CPNet> enumerate_chain_nets();

/// run_trial over every ordered pair of enumerate_chain_nets().
SuiteSummary exhaustive_suite();

}  // namespace cpnet
