#include "cpnet/unfold.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace cpnet {

std::vector<PreferenceRelation> unfold_relation(const PreferenceRelation& rel, std::string_view owner,
						const CPNet& net, const std::set<FeatureName>& scope) {
	if (!net.has_feature(owner)) throw InvalidNet("unknown feature '" + std::string(owner) + "'");
	if (scope.count(FeatureName(owner)))
		throw InvalidNet("unfold scope contains the owning feature '" + std::string(owner) + "'");
	for (const auto& g : scope)
		if (!net.has_feature(g)) throw InvalidNet("unfold scope names unknown feature '" + g + "'");

	if (!rel.condition.empty()) return {rel};

	std::vector<PreferenceRelation> out;
	for (const auto& feature : net.features()) {
		if (!scope.count(feature.name)) continue;
		for (const auto& value : feature.domain)
			out.push_back(PreferenceRelation{Condition::of(feature.name, value), rel.levels});
	}
	if (out.empty()) out.push_back(rel);
	return out;
}

CPNet unfold_net(const CPNet& net) {
	require_valid(net);
	CPNet out = net;
	for (const auto& owner : net.features()) {
		std::set<FeatureName> scope;
		for (const auto& f : net.features())
			if (f.name != owner.name) scope.insert(f.name);

		std::vector<PreferenceRelation> relations;
		for (const auto& rel : net.cpt(owner.name).relations) {
			auto expanded = unfold_relation(rel, owner.name, net, scope);
			relations.insert(relations.end(), std::make_move_iterator(expanded.begin()),
					 std::make_move_iterator(expanded.end()));
		}
		out.set_relations(owner.name, std::move(relations));
	}
	return out;
}

namespace {

using Assignment = std::pair<FeatureName, Value>;

// Folds one group if any is foldable; returns false at the fixpoint.
bool fold_once(std::vector<PreferenceRelation>& rows, std::size_t required,
	       const std::set<Assignment>& universe) {
	// Orderings in order of first appearance, with the single-feature
	// assignments they occur under.
	std::vector<const std::vector<Level>*> order;
	std::map<std::vector<Level>, std::set<Assignment>> cover;
	for (const auto& rel : rows) {
		if (rel.condition.size() != 1) continue;
		const auto& [f, v] = *rel.condition.assignments().begin();
		if (!universe.count(Assignment{f, v})) continue;
		auto [it, inserted] = cover.try_emplace(rel.levels);
		if (inserted) order.push_back(&it->first);
		it->second.insert(Assignment{f, v});
	}
	for (const auto* levels : order) {
		if (cover.at(*levels).size() != required) continue;

		const std::vector<Level> target = *levels;
		const bool have_unconditional =
		    std::any_of(rows.begin(), rows.end(), [&](const PreferenceRelation& r) {
			    return r.condition.empty() && r.levels == target;
		    });
		std::vector<PreferenceRelation> next;
		bool placed = have_unconditional;
		for (auto& rel : rows) {
			const bool member = rel.condition.size() == 1 && rel.levels == target &&
					    universe.count(Assignment{rel.condition.assignments().begin()->first,
								      rel.condition.assignments().begin()->second});
			if (!member) {
				next.push_back(std::move(rel));
			} else if (!placed) {
				next.push_back(PreferenceRelation{Condition{}, target});
				placed = true;
			}
		}
		rows = std::move(next);
		return true;
	}
	return false;
}

}  // namespace

CPNet fold_net(const CPNet& net) {
	require_valid(net);
	CPNet out = net;
	for (const auto& owner : net.features()) {
		std::set<Assignment> universe;
		for (const auto& f : net.features()) {
			if (f.name == owner.name) continue;
			for (const auto& v : f.domain) universe.insert(Assignment{f.name, v});
		}
		if (universe.empty()) continue;

		auto rows = net.cpt(owner.name).relations;
		while (fold_once(rows, universe.size(), universe)) {
		}
		out.set_relations(owner.name, std::move(rows));
	}
	return out;
}

}  // namespace cpnet
