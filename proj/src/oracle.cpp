#include "cpnet/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <tuple>

#include "cpnet/unfold.hpp"

namespace cpnet {

void check_params(const GeneratorParams& p) {
	if (p.feature_count < 1) throw std::invalid_argument("feature_count must be positive");
	if (p.min_domain < 1 || p.max_domain < p.min_domain)
		throw std::invalid_argument("domain range must satisfy 1 <= min <= max");
	auto fraction = [](double x) { return x >= 0.0 && x <= 1.0; };
	if (!fraction(p.relation_density) || !fraction(p.indifference_probability))
		throw std::invalid_argument("fractions must lie in [0, 1]");
}

namespace {

FeatureName feature_name(int i) {
	if (i < 26) return std::string(1, static_cast<char>('A' + i));
	return "F" + std::to_string(i);
}

Value value_name(const FeatureName& feature, int k) {
	if (feature.size() == 1)
		return std::string(1, static_cast<char>(feature[0] - 'A' + 'a')) + std::to_string(k);
	return "f" + feature.substr(1) + "_" + std::to_string(k);
}

}  // namespace

CPNet generate_net(const GeneratorParams& params) {
	check_params(params);
	std::mt19937_64 rng(params.seed);
	auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
	auto chance = [&](double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; };

	CPNet net;
	const int n = params.feature_count;
	for (int i = 0; i < n; ++i) {
		const FeatureName name = feature_name(i);
		std::vector<Value> domain;
		const int size = uniform(params.min_domain, params.max_domain);
		for (int k = 1; k <= size; ++k) domain.push_back(value_name(name, k));
		net.add_feature(name, std::move(domain));
	}

	std::vector<int> topo(static_cast<std::size_t>(n));
	std::iota(topo.begin(), topo.end(), 0);
	std::shuffle(topo.begin(), topo.end(), rng);

	for (int pos = 0; pos < n; ++pos) {
		const Feature owner = net.features()[static_cast<std::size_t>(topo[pos])];
		std::vector<int> earlier(topo.begin(), topo.begin() + pos);
		std::shuffle(earlier.begin(), earlier.end(), rng);
		earlier.resize(static_cast<std::size_t>(uniform(0, std::min(2, pos))));
		std::sort(earlier.begin(), earlier.end());

		// Odometer over the parents' domains; no parents gives the single
		// unconditional row.
		std::vector<const Feature*> parents;
		for (int e : earlier) parents.push_back(&net.features()[static_cast<std::size_t>(e)]);
		std::vector<std::size_t> digit(parents.size(), 0);
		while (true) {
			if (chance(params.relation_density)) {
				PreferenceRelation rel;
				for (std::size_t k = 0; k < parents.size(); ++k)
					rel.condition.assign(parents[k]->name, parents[k]->domain[digit[k]]);
				auto order = owner.domain;
				std::shuffle(order.begin(), order.end(), rng);
				for (std::size_t k = 0; k < order.size(); ++k) {
					if (k > 0 && chance(params.indifference_probability))
						rel.levels.back().insert(order[k]);
					else
						rel.levels.push_back(Level{order[k]});
				}
				net.add_relation(owner.name, std::move(rel));
			}
			std::size_t k = 0;
			while (k < digit.size() && ++digit[k] == parents[k]->domain.size()) digit[k++] = 0;
			if (k == digit.size()) break;
		}
	}
	return net;
}

ConstraintReport check_enrichment(const CPNet& initial, const CPNet& reference, const CPNet& result,
				  const MergeTrace& trace) {
	const FactSet before = fact_set(unfold_net(initial));
	const FactSet offered = fact_set(unfold_net(reference));
	const FactSet after = fact_set(unfold_net(result));

	ConstraintReport report;
	for (const auto& f : before)
		if (f.kind == FactKind::strict && !after.count(f)) report.constraint1_violations.push_back(f);

	// Relationship N asserts for each (feature, condition, unordered pair).
	using PairKey = std::tuple<FeatureName, Condition, Value, Value>;
	auto key = [](const Fact& f) {
		return f.left < f.right ? PairKey{f.feature, f.condition, f.left, f.right}
					: PairKey{f.feature, f.condition, f.right, f.left};
	};
	std::map<PairKey, std::vector<const Fact*>> asserted;
	for (const auto& f : before) asserted[key(f)].push_back(&f);

	using Certified = std::tuple<FeatureName, Condition, Value>;
	std::set<Certified> certified;
	for (const auto& event : trace.events) {
		if (const auto* s = std::get_if<Skipped>(&event))
			certified.emplace(s->feature, s->condition, s->value);
		else if (const auto* t = std::get_if<TieCreated>(&event))
			certified.emplace(t->feature, t->condition, t->value);
	}

	for (const auto& f : offered) {
		if (f.kind != FactKind::strict || after.count(f)) continue;
		bool opposed = false;
		if (auto it = asserted.find(key(f)); it != asserted.end())
			opposed = std::any_of(it->second.begin(), it->second.end(),
					      [&](const Fact* g) { return !(*g == f); });
		if (opposed) continue;
		if (certified.count({f.feature, f.condition, f.left}) ||
		    certified.count({f.feature, f.condition, f.right}))
			continue;
		report.constraint2_violations.push_back(f);
	}
	return report;
}

std::size_t SuiteSummary::total_failures() const {
	return enrich_errors + constraint1_failures + constraint2_failures + roundtrip_failures +
	       self_enrich_failures + empty_net_failures;
}

std::string SuiteSummary::str() const {
	std::string out;
	auto line = [&](const char* k, std::size_t v) { out += std::string(k) + " " + std::to_string(v) + "\n"; };
	line("trials", trials);
	line("enrich_errors", enrich_errors);
	line("constraint1_failures", constraint1_failures);
	line("constraint2_failures", constraint2_failures);
	line("roundtrip_failures", roundtrip_failures);
	line("self_enrich_failures", self_enrich_failures);
	line("empty_net_failures", empty_net_failures);
	line("total_failures", total_failures());
	for (const auto& f : failures)
		out += "FAIL " + std::to_string(f.seed) + " " + f.check + " " + f.detail + "\n";
	return out;
}

SuiteSummary& SuiteSummary::operator+=(const SuiteSummary& o) {
	trials += o.trials;
	enrich_errors += o.enrich_errors;
	constraint1_failures += o.constraint1_failures;
	constraint2_failures += o.constraint2_failures;
	roundtrip_failures += o.roundtrip_failures;
	self_enrich_failures += o.self_enrich_failures;
	empty_net_failures += o.empty_net_failures;
	failures.insert(failures.end(), o.failures.begin(), o.failures.end());
	return *this;
}

void run_trial(const CPNet& initial, const CPNet& reference, std::uint64_t seed, SuiteSummary& summary) {
	++summary.trials;
	auto fail = [&](std::size_t& counter, std::string check, std::string detail) {
		++counter;
		summary.failures.push_back({seed, std::move(check), std::move(detail)});
	};

	try {
		auto [result, trace] = enrich(initial, reference);
		require_valid(result, "enriched net");
		auto report = check_enrichment(initial, reference, result, trace);
		if (!report.constraint1_violations.empty())
			fail(summary.constraint1_failures, "constraint1", report.constraint1_violations.front().str());
		if (!report.constraint2_violations.empty())
			fail(summary.constraint2_failures, "constraint2", report.constraint2_violations.front().str());
	} catch (const std::exception& e) {
		fail(summary.enrich_errors, "enrich", e.what());
	}

	for (const CPNet* net : {&initial, &reference}) {
		try {
			if (!fact_equal(fold_net(unfold_net(*net)), *net))
				fail(summary.roundtrip_failures, "roundtrip", "fold(unfold(N)) differs from N");
		} catch (const std::exception& e) {
			fail(summary.roundtrip_failures, "roundtrip", e.what());
		}
	}

	try {
		if (!fact_equal(enrich(initial, initial).net, initial))
			fail(summary.self_enrich_failures, "self_enrich", "enrich(N, N) differs from N");
	} catch (const std::exception& e) {
		fail(summary.self_enrich_failures, "self_enrich", e.what());
	}

	try {
		if (!fact_equal(enrich(initial, CPNet{}).net, initial))
			fail(summary.empty_net_failures, "empty_net", "enrich(N, empty) differs from N");
	} catch (const std::exception& e) {
		fail(summary.empty_net_failures, "empty_net", e.what());
	}
}

SuiteSummary property_suite(const GeneratorParams& params, int trials) {
	check_params(params);
	if (trials < 1) throw std::invalid_argument("trials must be at least 1");
	if (params.feature_count < 2) throw std::invalid_argument("property_suite needs feature_count >= 2");

	SuiteSummary summary;
	for (int t = 0; t < trials; ++t) {
		const std::uint64_t seed = params.seed + static_cast<std::uint64_t>(t);
		std::mt19937_64 rng(seed);
		std::uniform_int_distribution<int> count(2, params.feature_count);

		GeneratorParams a = params;
		a.feature_count = count(rng);
		a.seed = rng();
		GeneratorParams b = params;
		b.feature_count = count(rng);
		b.seed = rng();
		run_trial(generate_net(a), generate_net(b), seed, summary);
	}
	return summary;
}

std::vector<CPNet> enumerate_chain_nets() {
	// Table options for one feature F with the other feature G:
	// 0 empty, 1..2 unconditional, 3..10 rows under g1/g2 (each absent,
	// f1>f2 or f2>f1, not both absent).
	auto table = [](int option, const std::string& f, const std::string& g, const std::string& gv) {
		const std::vector<Value> up{f + "1", f + "2"}, down{f + "2", f + "1"};
		std::vector<PreferenceRelation> rows;
		if (option == 1) rows.push_back(PreferenceRelation::chain({}, up));
		if (option == 2) rows.push_back(PreferenceRelation::chain({}, down));
		if (option >= 3) {
			int code = option - 3 + 1;  // 1..8 in base 3 over (g1, g2), skipping 0
			for (int k = 1; k <= 2; ++k) {
				int digit = code % 3;
				code /= 3;
				if (digit == 1) rows.push_back(PreferenceRelation::chain(Condition::of(g, gv + std::to_string(k)), up));
				if (digit == 2) rows.push_back(PreferenceRelation::chain(Condition::of(g, gv + std::to_string(k)), down));
			}
		}
		return rows;
	};

	std::vector<CPNet> nets;
	for (int a = 0; a <= 10; ++a) {
		for (int b = 0; b <= 10; ++b) {
			if (a >= 3 && b >= 3) continue;  // A and B conditioning each other
			CPNet net;
			net.add_feature("A", {"a1", "a2"});
			net.add_feature("B", {"b1", "b2"});
			for (auto& r : table(a, "a", "B", "b")) net.add_relation("A", std::move(r));
			for (auto& r : table(b, "b", "A", "a")) net.add_relation("B", std::move(r));
			nets.push_back(std::move(net));
		}
	}
	return nets;
}

SuiteSummary exhaustive_suite() {
	const auto nets = enumerate_chain_nets();
	SuiteSummary summary;
	std::uint64_t pair = 0;
	for (const auto& n : nets)
		for (const auto& r : nets) run_trial(n, r, pair++, summary);
	return summary;
}

}  // namespace cpnet
