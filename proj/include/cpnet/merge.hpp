#pragma once

// Asymmetric merging ("enrichment"): an initial net absorbs the
// non-conflicting content of a reference net without losing any of its own
// strict preferences.

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cpnet/model.hpp"

namespace cpnet {

// ---------------------------------------------------------------------------
// Position finding
// ---------------------------------------------------------------------------

/// Insert the new value as a singleton level at `index` (0 = most preferred).
struct Insert {
	std::size_t index;
	friend bool operator==(const Insert&, const Insert&) = default;
};

/// No ordering separates the new value from these existing values.
struct Tie {
	std::set<Value> values;
	friend bool operator==(const Tie&, const Tie&) = default;
};

/// `above` must sit above the new value and `below` beneath it, but `above`
/// is already at or below `below` in the target relation.
struct Infeasible {
	Value above;
	Value below;
	friend bool operator==(const Infeasible&, const Infeasible&) = default;
};

using PositionResult = std::variant<Insert, Tie, Infeasible>;

// ---------------------------------------------------------------------------
// Trace
// ---------------------------------------------------------------------------

struct FeatureAdded {
	FeatureName feature;
	std::vector<Value> domain;
	friend bool operator==(const FeatureAdded&, const FeatureAdded&) = default;
};

struct CompleteMerge {
	FeatureName feature;
	PreferenceRelation relation;
	friend bool operator==(const CompleteMerge&, const CompleteMerge&) = default;
};

/// Opens the partial merge of a reference relation into `target`.
struct PartialMerge {
	FeatureName feature;
	Condition condition;
	PreferenceRelation target;
	friend bool operator==(const PartialMerge&, const PartialMerge&) = default;
};

struct PartialInsert {
	FeatureName feature;
	Condition condition;
	Value value;
	std::size_t index;
	friend bool operator==(const PartialInsert&, const PartialInsert&) = default;
};

struct TieCreated {
	FeatureName feature;
	Condition condition;
	Value value;
	std::set<Value> tied_with;
	friend bool operator==(const TieCreated&, const TieCreated&) = default;
};

struct Skipped {
	FeatureName feature;
	Condition condition;
	Value value;
	Infeasible certificate;
	friend bool operator==(const Skipped&, const Skipped&) = default;
};

/// Every fact of the reference relation already held.
struct NoOp {
	FeatureName feature;
	Condition condition;
	friend bool operator==(const NoOp&, const NoOp&) = default;
};

struct CycleFound {
	std::vector<FeatureName> cycle;
	friend bool operator==(const CycleFound&, const CycleFound&) = default;
};

using TraceEvent = std::variant<FeatureAdded, CompleteMerge, PartialMerge, PartialInsert, TieCreated,
				Skipped, NoOp, CycleFound>;

struct MergeTrace {
	std::vector<TraceEvent> events;
	friend bool operator==(const MergeTrace&, const MergeTrace&) = default;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

bool conditions_match(const Condition& a, const Condition& b);

/// True when no row of `cpt` has the condition of `incoming`, or when every
/// such row shares no value with it.
bool can_complete_merge(const PreferenceRelation& incoming, const CPT& cpt);

/// Where `x` (in `reference`, absent from `target`) goes in `target` so that
/// every strict ordering between `x` and the shared values in `reference`
/// also holds in `target`.
PositionResult find_position(const Value& x, const PreferenceRelation& target,
			     const PreferenceRelation& reference);

struct PartialMergeResult {
	PreferenceRelation relation;
	std::vector<PreferenceRelation> ties;  // new one-level indifference relations
	std::vector<TraceEvent> events;
};

/// Inserts the values of `reference` missing from `target`, most preferred
/// first. Target levels are never removed or reordered.
PartialMergeResult partial_merge(std::string_view feature, const PreferenceRelation& target,
				 const PreferenceRelation& reference);

struct MergeStep {
	CPT cpt;
	std::vector<TraceEvent> events;
};

MergeStep merge_relation(const PreferenceRelation& incoming, CPT cpt);

enum class CyclePolicy { warn, reject };

/// Raised by enrich under CyclePolicy::reject.
class CyclicResult : public Error {
public:
	explicit CyclicResult(std::vector<std::vector<FeatureName>> cycles);
	const std::vector<std::vector<FeatureName>>& cycles() const { return cycles_; }

private:
	std::vector<std::vector<FeatureName>> cycles_;
};

struct EnrichResult {
	CPNet net;
	MergeTrace trace;
};

/// Enriches `initial` with `reference`: unfold both, add missing features,
/// union shared domains, merge every reference row, fold.
EnrichResult enrich(const CPNet& initial, const CPNet& reference,
		    CyclePolicy policy = CyclePolicy::warn);

}  // namespace cpnet
