#include "cpnet/merge.hpp"

#include <algorithm>
#include <stdexcept>

#include "cpnet/unfold.hpp"

namespace cpnet {

bool conditions_match(const Condition& a, const Condition& b) { return a == b; }

namespace {

bool shares_value(const PreferenceRelation& a, const PreferenceRelation& b) {
	for (const auto& level : a.levels)
		for (const auto& v : level)
			if (b.contains(v)) return true;
	return false;
}

// Values of `rel` from most to least preferred; lexical within a level.
std::vector<Value> preference_order(const PreferenceRelation& rel) {
	std::vector<Value> out;
	for (const auto& level : rel.levels) out.insert(out.end(), level.begin(), level.end());
	return out;
}

}  // namespace

bool can_complete_merge(const PreferenceRelation& incoming, const CPT& cpt) {
	return std::none_of(cpt.relations.begin(), cpt.relations.end(), [&](const PreferenceRelation& p) {
		return conditions_match(p.condition, incoming.condition) && shares_value(p, incoming);
	});
}

PositionResult find_position(const Value& x, const PreferenceRelation& target,
			     const PreferenceRelation& reference) {
	if (!conditions_match(target.condition, reference.condition))
		throw std::invalid_argument("find_position: conditions differ");
	const auto x_ref = reference.level_of(x);
	if (!x_ref) throw std::invalid_argument("find_position: '" + x + "' is not in the reference relation");
	if (target.contains(x))
		throw std::invalid_argument("find_position: '" + x + "' is already in the target relation");

	// lo: lowest target level among values that must stay above x;
	// hi: highest target level among values that must stay below x.
	long lo = -1;
	long hi = static_cast<long>(target.levels.size());
	Value above_bound, below_bound;
	for (std::size_t ri = 0; ri < reference.levels.size(); ++ri) {
		if (ri == *x_ref) continue;
		for (const auto& f : reference.levels[ri]) {
			const auto t = target.level_of(f);
			if (!t) continue;
			const long at = static_cast<long>(*t);
			if (ri < *x_ref) {
				if (at > lo || (at == lo && f < above_bound)) {
					lo = at;
					above_bound = f;
				}
			} else {
				if (at < hi || (at == hi && f < below_bound)) {
					hi = at;
					below_bound = f;
				}
			}
		}
	}
	if (lo >= hi) return Infeasible{above_bound, below_bound};

	std::set<Value> unconstrained;
	for (long i = lo + 1; i < hi; ++i)
		for (const auto& v : target.levels[static_cast<std::size_t>(i)])
			if (!reference.contains(v)) unconstrained.insert(v);
	if (unconstrained.empty()) return Insert{static_cast<std::size_t>(lo + 1)};
	return Tie{std::move(unconstrained)};
}

PartialMergeResult partial_merge(std::string_view feature, const PreferenceRelation& target,
				 const PreferenceRelation& reference) {
	if (!conditions_match(target.condition, reference.condition))
		throw std::invalid_argument("partial_merge: conditions differ");

	const FeatureName owner(feature);
	PartialMergeResult result{target, {}, {}};
	PreferenceRelation& p = result.relation;
	const auto order = preference_order(reference);
	std::set<Value> processed;

	// Each insertion changes the target, so the scan starts over.
	bool restart = true;
	while (restart) {
		restart = false;
		for (const auto& x : order) {
			if (processed.count(x) || p.contains(x)) continue;
			processed.insert(x);
			auto position = find_position(x, p, reference);
			if (auto* ins = std::get_if<Insert>(&position)) {
				p.levels.insert(p.levels.begin() + static_cast<std::ptrdiff_t>(ins->index), Level{x});
				result.events.push_back(PartialInsert{owner, p.condition, x, ins->index});
				restart = true;
				break;
			}
			if (auto* tie = std::get_if<Tie>(&position)) {
				Level level = tie->values;
				level.insert(x);
				result.ties.push_back(PreferenceRelation{p.condition, {std::move(level)}});
				result.events.push_back(TieCreated{owner, p.condition, x, tie->values});
				continue;
			}
			result.events.push_back(Skipped{owner, p.condition, x, std::get<Infeasible>(position)});
		}
	}
	return result;
}

MergeStep merge_relation(const PreferenceRelation& incoming, CPT cpt) {
	MergeStep step{std::move(cpt), {}};
	auto& rows = step.cpt.relations;
	const FeatureName& owner = step.cpt.owner;

	if (can_complete_merge(incoming, step.cpt)) {
		rows.push_back(incoming);
		step.events.push_back(CompleteMerge{owner, incoming});
		return step;
	}

	FactSet wanted, held;
	relation_facts(owner, incoming, wanted);
	for (const auto& p : rows)
		if (conditions_match(p.condition, incoming.condition)) relation_facts(owner, p, held);
	if (std::includes(held.begin(), held.end(), wanted.begin(), wanted.end())) {
		step.events.push_back(NoOp{owner, incoming.condition});
		return step;
	}

	std::vector<std::size_t> targets;
	for (std::size_t i = 0; i < rows.size(); ++i)
		if (conditions_match(rows[i].condition, incoming.condition) && shares_value(rows[i], incoming))
			targets.push_back(i);

	std::vector<PreferenceRelation> ties;
	for (std::size_t i : targets) {
		step.events.push_back(PartialMerge{owner, incoming.condition, rows[i]});
		auto merged = partial_merge(owner, rows[i], incoming);
		rows[i] = std::move(merged.relation);
		ties.insert(ties.end(), merged.ties.begin(), merged.ties.end());
		step.events.insert(step.events.end(), merged.events.begin(), merged.events.end());
	}
	rows.insert(rows.end(), ties.begin(), ties.end());
	return step;
}

namespace {

std::string render_cycles(const std::vector<std::vector<FeatureName>>& cycles) {
	std::string out = "cyclic result:";
	for (const auto& cycle : cycles) {
		out += ' ';
		for (std::size_t i = 0; i < cycle.size(); ++i) out += (i ? "," : "") + cycle[i];
	}
	return out;
}

}  // namespace

CyclicResult::CyclicResult(std::vector<std::vector<FeatureName>> cycles)
    : Error(render_cycles(cycles)), cycles_(std::move(cycles)) {}

EnrichResult enrich(const CPNet& initial, const CPNet& reference, CyclePolicy policy) {
	require_valid(initial, "initial net");
	require_valid(reference, "reference net");

	CPNet net = unfold_net(initial);
	const CPNet ref = unfold_net(reference);
	MergeTrace trace;

	for (const auto& f : ref.features()) {
		if (!net.has_feature(f.name)) {
			net.add_feature(f.name, f.domain);
			trace.events.push_back(FeatureAdded{f.name, f.domain});
		} else {
			net.extend_domain(f.name, f.domain);
		}
	}

	for (const auto& f : ref.features()) {
		for (const auto& incoming : ref.cpt(f.name).relations) {
			auto step = merge_relation(incoming, net.cpt(f.name));
			net.set_relations(f.name, std::move(step.cpt.relations));
			trace.events.insert(trace.events.end(), std::make_move_iterator(step.events.begin()),
					    std::make_move_iterator(step.events.end()));
		}
	}

	net = fold_net(net);

	auto cycles = detect_cycles(net);
	if (!cycles.empty()) {
		if (policy == CyclePolicy::reject) throw CyclicResult(std::move(cycles));
		for (auto& c : cycles) trace.events.push_back(CycleFound{std::move(c)});
	}
	return {std::move(net), std::move(trace)};
}

}  // namespace cpnet
