#pragma once

// Core CP-net model: features, conditions, preference relations, CPTs and
// the fact-level view used to compare nets semantically.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cpnet {

using FeatureName = std::string;
using Value = std::string;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// A net (or an input to a net operation) violates a well-formedness rule.
class InvalidNet : public Error {
public:
	using Error::Error;
};

struct Feature {
	FeatureName name;
	std::vector<Value> domain;  // declaration order

	bool has_value(std::string_view v) const;
	friend bool operator==(const Feature&, const Feature&) = default;
};

/// Partial assignment of values to features. Empty means unconditional.
class Condition {
public:
	Condition() = default;
	Condition(std::initializer_list<std::pair<const FeatureName, Value>> init);

	static Condition of(FeatureName feature, Value value);

	/// Throws InvalidNet if `feature` is already assigned.
	void assign(FeatureName feature, Value value);

	bool empty() const { return assignments_.empty(); }
	std::size_t size() const { return assignments_.size(); }
	bool assigns(std::string_view feature) const;
	std::optional<Value> value_of(std::string_view feature) const;
	const std::map<FeatureName, Value, std::less<>>& assignments() const { return assignments_; }

	/// "T" for the empty condition, otherwise "A=a1&B=b2" in feature order.
	std::string str() const;

	friend auto operator<=>(const Condition&, const Condition&) = default;
	friend bool operator==(const Condition&, const Condition&) = default;

private:
	std::map<FeatureName, Value, std::less<>> assignments_;
};

using Level = std::set<Value>;

/// `condition : level_0 > level_1 > ...` with indifference inside a level.
struct PreferenceRelation {
	Condition condition;
	std::vector<Level> levels;

	static PreferenceRelation chain(Condition condition, const std::vector<Value>& order);

	std::set<Value> values() const;
	bool contains(std::string_view v) const;
	std::optional<std::size_t> level_of(std::string_view v) const;

	/// "A=a1 : b1 > b2 ~ b3"
	std::string str() const;
	/// The ordering alone, without whitespace: "b1>b2~b3".
	std::string ordering_str() const;

	friend auto operator<=>(const PreferenceRelation&, const PreferenceRelation&) = default;
	friend bool operator==(const PreferenceRelation&, const PreferenceRelation&) = default;
};

struct CPT {
	FeatureName owner;
	std::vector<PreferenceRelation> relations;  // insertion order

	friend bool operator==(const CPT&, const CPT&) = default;
};

enum class FactKind { strict, indifferent };

/// One pairwise statement sanctioned by a CPT row: `condition : left > right`
/// or `condition : left ~ right`. Indifferent facts keep left < right.
struct Fact {
	FeatureName feature;
	Condition condition;
	Value left;
	Value right;
	FactKind kind = FactKind::strict;

	static Fact strict(FeatureName feature, Condition condition, Value better, Value worse);
	static Fact indifferent(FeatureName feature, Condition condition, Value a, Value b);

	/// "feature | condition | left REL right"
	std::string str() const;

	friend auto operator<=>(const Fact&, const Fact&) = default;
	friend bool operator==(const Fact&, const Fact&) = default;
};

using FactSet = std::set<Fact>;

class CPNet {
public:
	CPNet() = default;

	/// Assembles a net without checking it; run validate() on the result.
	/// Missing CPTs are created empty.
	CPNet(std::vector<Feature> features, std::vector<CPT> cpts);

	/// Adds a feature with an empty CPT. Throws InvalidNet on a duplicate
	/// name, an empty domain or a duplicated value.
	CPNet& add_feature(FeatureName name, std::vector<Value> domain);

	/// Appends `rel` to CPT(feature) after checking that every referenced
	/// feature and value exists, that levels are non-empty and disjoint, and
	/// that the condition does not assign `feature` itself.
	CPNet& add_relation(std::string_view feature, PreferenceRelation rel);

	/// Appends values missing from the domain of `feature`, in the given order.
	CPNet& extend_domain(std::string_view feature, const std::vector<Value>& values);

	const std::vector<Feature>& features() const { return features_; }
	const std::vector<CPT>& cpts() const { return cpts_; }

	bool has_feature(std::string_view name) const;
	const Feature& feature(std::string_view name) const;
	const CPT& cpt(std::string_view name) const;
	/// Replaces the relations of CPT(name) wholesale, unchecked.
	void set_relations(std::string_view name, std::vector<PreferenceRelation> relations);

	std::size_t size() const { return features_.size(); }
	bool empty() const { return features_.empty(); }

	friend bool operator==(const CPNet&, const CPNet&) = default;

private:
	std::size_t index_of(std::string_view name) const;

	std::vector<Feature> features_;
	std::vector<CPT> cpts_;  // parallel to features_
};

/// Features mentioned in the conditions of CPT(feature).
std::set<FeatureName> derived_parents(const CPNet& net, std::string_view feature);

/// Every elementary cycle of the parent graph (edge G -> F iff G is a parent
/// of F). Each cycle starts at its lexically smallest feature; the list is
/// sorted.
std::vector<std::vector<FeatureName>> detect_cycles(const CPNet& net);

enum class ViolationKind {
	unknown_feature,
	unknown_value,
	self_condition,
	malformed_levels,
	contradiction,
	bad_feature,
};

struct Violation {
	ViolationKind kind;
	FeatureName feature;
	std::string message;
};

struct ValidationReport {
	std::vector<Violation> violations;

	bool ok() const { return violations.empty(); }
	std::size_t count(ViolationKind kind) const;
};

ValidationReport validate(const CPNet& net);

/// Throws InvalidNet carrying the first violation.
void require_valid(const CPNet& net, std::string_view what = "net");

/// Facts sanctioned by one relation of CPT(feature), without validation.
void relation_facts(std::string_view feature, const PreferenceRelation& rel, FactSet& out);

/// All facts sanctioned by the rows of a valid net. Throws InvalidNet.
FactSet fact_set(const CPNet& net);

/// Same features, same domains (as sets) and same facts once both nets are
/// unfolded.
bool fact_equal(const CPNet& a, const CPNet& b);

}  // namespace cpnet
