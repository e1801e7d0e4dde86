#include "cpnet/model.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <tuple>

#include "cpnet/unfold.hpp"

namespace cpnet {

bool Feature::has_value(std::string_view v) const {
	return std::find(domain.begin(), domain.end(), v) != domain.end();
}

// ---------------------------------------------------------------------------
// Condition
// ---------------------------------------------------------------------------

Condition::Condition(std::initializer_list<std::pair<const FeatureName, Value>> init) {
	for (const auto& [f, v] : init) assign(f, v);
}

Condition Condition::of(FeatureName feature, Value value) {
	Condition c;
	c.assign(std::move(feature), std::move(value));
	return c;
}

void Condition::assign(FeatureName feature, Value value) {
	if (assignments_.count(feature))
		throw InvalidNet("condition assigns feature '" + feature + "' twice");
	assignments_.emplace(std::move(feature), std::move(value));
}

bool Condition::assigns(std::string_view feature) const {
	return assignments_.find(feature) != assignments_.end();
}

std::optional<Value> Condition::value_of(std::string_view feature) const {
	auto it = assignments_.find(feature);
	if (it == assignments_.end()) return std::nullopt;
	return it->second;
}

std::string Condition::str() const {
	if (assignments_.empty()) return "T";
	std::string out;
	for (const auto& [f, v] : assignments_) {
		if (!out.empty()) out += '&';
		out += f;
		out += '=';
		out += v;
	}
	return out;
}

// ---------------------------------------------------------------------------
// PreferenceRelation
// ---------------------------------------------------------------------------

PreferenceRelation PreferenceRelation::chain(Condition condition, const std::vector<Value>& order) {
	PreferenceRelation rel{std::move(condition), {}};
	for (const auto& v : order) rel.levels.push_back(Level{v});
	return rel;
}

std::set<Value> PreferenceRelation::values() const {
	std::set<Value> out;
	for (const auto& level : levels) out.insert(level.begin(), level.end());
	return out;
}

bool PreferenceRelation::contains(std::string_view v) const {
	return level_of(v).has_value();
}

std::optional<std::size_t> PreferenceRelation::level_of(std::string_view v) const {
	for (std::size_t i = 0; i < levels.size(); ++i)
		if (levels[i].count(Value(v))) return i;
	return std::nullopt;
}

std::string PreferenceRelation::ordering_str() const {
	std::string out;
	for (std::size_t i = 0; i < levels.size(); ++i) {
		if (i) out += '>';
		bool first = true;
		for (const auto& v : levels[i]) {
			if (!first) out += '~';
			out += v;
			first = false;
		}
	}
	return out;
}

std::string PreferenceRelation::str() const {
	std::string out;
	if (condition.empty()) {
		out = "T";
	} else {
		bool first = true;
		for (const auto& [f, v] : condition.assignments()) {
			if (!first) out += " & ";
			out += f + "=" + v;
			first = false;
		}
	}
	out += " :";
	for (std::size_t i = 0; i < levels.size(); ++i) {
		if (i) out += " >";
		bool first = true;
		for (const auto& v : levels[i]) {
			out += first ? " " : " ~ ";
			out += v;
			first = false;
		}
	}
	return out;
}

// ---------------------------------------------------------------------------
// Fact
// ---------------------------------------------------------------------------

Fact Fact::strict(FeatureName feature, Condition condition, Value better, Value worse) {
	return Fact{std::move(feature), std::move(condition), std::move(better), std::move(worse),
		    FactKind::strict};
}

Fact Fact::indifferent(FeatureName feature, Condition condition, Value a, Value b) {
	if (b < a) std::swap(a, b);
	return Fact{std::move(feature), std::move(condition), std::move(a), std::move(b),
		    FactKind::indifferent};
}

std::string Fact::str() const {
	return feature + " | " + condition.str() + " | " + left +
	       (kind == FactKind::strict ? " > " : " ~ ") + right;
}

// ---------------------------------------------------------------------------
// CPNet
// ---------------------------------------------------------------------------

CPNet::CPNet(std::vector<Feature> features, std::vector<CPT> cpts)
    : features_(std::move(features)) {
	cpts_.resize(features_.size());
	for (std::size_t i = 0; i < features_.size(); ++i) cpts_[i].owner = features_[i].name;
	for (auto& cpt : cpts) {
		auto it = std::find_if(features_.begin(), features_.end(),
				       [&](const Feature& f) { return f.name == cpt.owner; });
		if (it == features_.end())
			throw InvalidNet("CPT for undeclared feature '" + cpt.owner + "'");
		auto& slot = cpts_[static_cast<std::size_t>(it - features_.begin())];
		slot.relations.insert(slot.relations.end(), cpt.relations.begin(), cpt.relations.end());
	}
}

bool CPNet::has_feature(std::string_view name) const {
	return std::any_of(features_.begin(), features_.end(),
			   [&](const Feature& f) { return f.name == name; });
}

std::size_t CPNet::index_of(std::string_view name) const {
	for (std::size_t i = 0; i < features_.size(); ++i)
		if (features_[i].name == name) return i;
	throw InvalidNet("unknown feature '" + std::string(name) + "'");
}

const Feature& CPNet::feature(std::string_view name) const { return features_[index_of(name)]; }

const CPT& CPNet::cpt(std::string_view name) const { return cpts_[index_of(name)]; }

void CPNet::set_relations(std::string_view name, std::vector<PreferenceRelation> relations) {
	cpts_[index_of(name)].relations = std::move(relations);
}

CPNet& CPNet::add_feature(FeatureName name, std::vector<Value> domain) {
	if (name.empty()) throw InvalidNet("feature name is empty");
	if (has_feature(name)) throw InvalidNet("duplicate feature '" + name + "'");
	if (domain.empty()) throw InvalidNet("feature '" + name + "' has an empty domain");
	std::set<Value> seen;
	for (const auto& v : domain)
		if (!seen.insert(v).second)
			throw InvalidNet("duplicate value '" + v + "' in domain of '" + name + "'");
	features_.push_back(Feature{name, std::move(domain)});
	cpts_.push_back(CPT{std::move(name), {}});
	return *this;
}

namespace {

// Structural problems of one relation of CPT(owner), as messages.
std::vector<std::pair<ViolationKind, std::string>> relation_problems(const CPNet& net,
								   const Feature& owner,
								   const PreferenceRelation& rel) {
	std::vector<std::pair<ViolationKind, std::string>> out;
	for (const auto& [f, v] : rel.condition.assignments()) {
		if (f == owner.name) {
			out.emplace_back(ViolationKind::self_condition,
					 "condition assigns the owning feature '" + f + "'");
		} else if (!net.has_feature(f)) {
			out.emplace_back(ViolationKind::unknown_feature,
					 "condition references unknown feature '" + f + "'");
		} else if (!net.feature(f).has_value(v)) {
			out.emplace_back(ViolationKind::unknown_value,
					 "value '" + v + "' is not in the domain of '" + f + "'");
		}
	}
	if (rel.levels.empty())
		out.emplace_back(ViolationKind::malformed_levels, "relation has no levels");
	std::set<Value> seen;
	for (const auto& level : rel.levels) {
		if (level.empty())
			out.emplace_back(ViolationKind::malformed_levels, "relation has an empty level");
		for (const auto& v : level) {
			if (!owner.has_value(v))
				out.emplace_back(ViolationKind::unknown_value,
						 "value '" + v + "' is not in the domain of '" + owner.name + "'");
			if (!seen.insert(v).second)
				out.emplace_back(ViolationKind::malformed_levels,
						 "value '" + v + "' appears in more than one level");
		}
	}
	return out;
}

}  // namespace

CPNet& CPNet::add_relation(std::string_view feature, PreferenceRelation rel) {
	const std::size_t idx = index_of(feature);
	auto problems = relation_problems(*this, features_[idx], rel);
	if (!problems.empty())
		throw InvalidNet("relation '" + rel.str() + "' for '" + std::string(feature) +
				 "': " + problems.front().second);
	cpts_[idx].relations.push_back(std::move(rel));
	return *this;
}

CPNet& CPNet::extend_domain(std::string_view feature, const std::vector<Value>& values) {
	auto& domain = features_[index_of(feature)].domain;
	for (const auto& v : values)
		if (std::find(domain.begin(), domain.end(), v) == domain.end()) domain.push_back(v);
	return *this;
}

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

std::set<FeatureName> derived_parents(const CPNet& net, std::string_view feature) {
	std::set<FeatureName> out;
	for (const auto& rel : net.cpt(feature).relations)
		for (const auto& [f, v] : rel.condition.assignments()) out.insert(f);
	return out;
}

std::vector<std::vector<FeatureName>> detect_cycles(const CPNet& net) {
	// children[g] = features that have g as a parent; nodes indexed in
	// lexical order so that "start at the smallest" is "start at the lowest
	// index".
	std::vector<FeatureName> names;
	for (const auto& f : net.features()) names.push_back(f.name);
	std::sort(names.begin(), names.end());
	auto idx = [&](const FeatureName& n) {
		return static_cast<std::size_t>(std::lower_bound(names.begin(), names.end(), n) - names.begin());
	};
	std::vector<std::vector<std::size_t>> children(names.size());
	for (const auto& f : net.features())
		for (const auto& p : derived_parents(net, f.name))
			if (net.has_feature(p)) children[idx(p)].push_back(idx(f.name));
	for (auto& c : children) std::sort(c.begin(), c.end());

	std::vector<std::vector<FeatureName>> cycles;
	std::vector<std::size_t> path;
	std::vector<bool> on_path(names.size(), false);

	// Cycles whose smallest node is `start`: simple paths over nodes > start
	// that return to start.
	std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t start, std::size_t node) {
		for (std::size_t next : children[node]) {
			if (next == start) {
				std::vector<FeatureName> cyc;
				for (std::size_t n : path) cyc.push_back(names[n]);
				cycles.push_back(std::move(cyc));
			} else if (next > start && !on_path[next]) {
				on_path[next] = true;
				path.push_back(next);
				dfs(start, next);
				path.pop_back();
				on_path[next] = false;
			}
		}
	};
	for (std::size_t s = 0; s < names.size(); ++s) {
		path = {s};
		on_path[s] = true;
		dfs(s, s);
		on_path[s] = false;
	}
	std::sort(cycles.begin(), cycles.end());
	return cycles;
}

// ---------------------------------------------------------------------------
// Validation and facts
// ---------------------------------------------------------------------------

std::size_t ValidationReport::count(ViolationKind kind) const {
	return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
						      [&](const Violation& v) { return v.kind == kind; }));
}

void relation_facts(std::string_view feature, const PreferenceRelation& rel, FactSet& out) {
	const FeatureName owner(feature);
	for (std::size_t i = 0; i < rel.levels.size(); ++i) {
		const auto& level = rel.levels[i];
		for (auto a = level.begin(); a != level.end(); ++a)
			for (auto b = std::next(a); b != level.end(); ++b)
				out.insert(Fact::indifferent(owner, rel.condition, *a, *b));
		for (std::size_t j = i + 1; j < rel.levels.size(); ++j)
			for (const auto& better : level)
				for (const auto& worse : rel.levels[j])
					out.insert(Fact::strict(owner, rel.condition, better, worse));
	}
}

ValidationReport validate(const CPNet& net) {
	ValidationReport report;
	std::set<FeatureName> names;
	for (const auto& f : net.features()) {
		if (f.name.empty())
			report.violations.push_back({ViolationKind::bad_feature, f.name, "empty feature name"});
		if (!names.insert(f.name).second)
			report.violations.push_back(
			    {ViolationKind::bad_feature, f.name, "duplicate feature '" + f.name + "'"});
		if (f.domain.empty())
			report.violations.push_back(
			    {ViolationKind::bad_feature, f.name, "feature '" + f.name + "' has an empty domain"});
		std::set<Value> seen;
		for (const auto& v : f.domain)
			if (!seen.insert(v).second)
				report.violations.push_back({ViolationKind::bad_feature, f.name,
							     "duplicate value '" + v + "' in domain of '" + f.name + "'"});
	}

	for (std::size_t i = 0; i < net.features().size(); ++i) {
		const Feature& owner = net.features()[i];
		const CPT& cpt = net.cpts()[i];
		for (const auto& rel : cpt.relations)
			for (auto& [kind, msg] : relation_problems(net, owner, rel))
				report.violations.push_back({kind, owner.name, rel.str() + ": " + msg});

		// Each (condition, unordered pair) must carry one relationship:
		// +1 lo > hi, -1 hi > lo, 0 indifferent.
		using Key = std::tuple<Condition, Value, Value>;
		std::map<Key, std::set<int>> seen;
		FactSet facts;
		for (const auto& rel : cpt.relations) relation_facts(owner.name, rel, facts);
		for (const auto& fact : facts) {
			const bool ordered = fact.left < fact.right;
			const Value& lo = ordered ? fact.left : fact.right;
			const Value& hi = ordered ? fact.right : fact.left;
			int sign = fact.kind == FactKind::indifferent ? 0 : (ordered ? 1 : -1);
			seen[Key{fact.condition, lo, hi}].insert(sign);
		}
		for (const auto& [key, signs] : seen) {
			if (signs.size() < 2) continue;
			const auto& [cond, lo, hi] = key;
			report.violations.push_back(
			    {ViolationKind::contradiction, owner.name,
			     "contradictory orderings of " + lo + " and " + hi + " under " + cond.str()});
		}
	}
	return report;
}

void require_valid(const CPNet& net, std::string_view what) {
	auto report = validate(net);
	if (!report.ok())
		throw InvalidNet("invalid " + std::string(what) + ": " + report.violations.front().feature +
				 ": " + report.violations.front().message);
}

FactSet fact_set(const CPNet& net) {
	require_valid(net);
	FactSet out;
	for (const auto& cpt : net.cpts())
		for (const auto& rel : cpt.relations) relation_facts(cpt.owner, rel, out);
	return out;
}

bool fact_equal(const CPNet& a, const CPNet& b) {
	require_valid(a);
	require_valid(b);
	auto domains = [](const CPNet& n) {
		std::map<FeatureName, std::set<Value>> out;
		for (const auto& f : n.features()) out[f.name] = {f.domain.begin(), f.domain.end()};
		return out;
	};
	if (domains(a) != domains(b)) return false;
	return fact_set(unfold_net(a)) == fact_set(unfold_net(b));
}

}  // namespace cpnet
