#include <doctest.h>

#include <algorithm>

#include "cpnet/format.hpp"
#include "cpnet/oracle.hpp"
#include "cpnet/unfold.hpp"
#include "support.hpp"

using namespace cpnet;
using testing::load;
using testing::rel;

TEST_CASE("generator") {
	const GeneratorParams p{5, 2, 4, 0.7, 0.2, 42};
	CHECK(generate_net(p) == generate_net(p));
	CHECK_FALSE(generate_net(p) == generate_net({5, 2, 4, 0.7, 0.2, 43}));

	for (std::uint64_t seed = 0; seed < 200; ++seed) {
		const CPNet net = generate_net({6, 1, 4, 0.7, 0.3, seed});
		CHECK(net.size() == 6);
		CHECK(validate(net).ok());
		CHECK(detect_cycles(net).empty());
		for (const auto& f : net.features()) {
			CHECK(f.domain.size() >= 1);
			CHECK(f.domain.size() <= 4);
			CHECK(derived_parents(net, f.name).size() <= 2);
		}
	}

	const CPNet bare = generate_net({4, 2, 3, 0.0, 0.0, 1});
	for (const auto& f : bare.features()) CHECK(bare.cpt(f.name).relations.empty());

	CHECK_THROWS_AS(check_params({0, 2, 3, 0.5, 0.1, 0}), std::invalid_argument);
	CHECK_THROWS_AS(check_params({3, 3, 2, 0.5, 0.1, 0}), std::invalid_argument);
	CHECK_THROWS_AS(check_params({3, 0, 2, 0.5, 0.1, 0}), std::invalid_argument);
	CHECK_THROWS_AS(check_params({3, 2, 3, 1.5, 0.1, 0}), std::invalid_argument);
	CHECK_THROWS_AS(check_params({3, 2, 3, 0.5, -0.1, 0}), std::invalid_argument);
}

TEST_CASE("check_enrichment on the three-net example") {
	const CPNet n = load("fig3a.cpn"), ref = load("fig3b.cpn");
	const auto r = enrich(n, ref);
	CHECK(check_enrichment(n, ref, r.net, r.trace).passed());

	SUBCASE("a lost initial fact breaks constraint 1") {
		CPNet broken = r.net;
		auto rows = broken.cpt("B").relations;
		rows[0] = rel("A=a1 : b1 > b2");
		broken.set_relations("B", rows);
		const auto report = check_enrichment(n, ref, broken, r.trace);
		CHECK(report.constraint1_violations ==
		      std::vector<Fact>{Fact::strict("B", Condition::of("A", "a1"), "b2", "b1")});
	}
	SUBCASE("the skip certificate is what excuses a6") {
		MergeTrace stripped;
		for (const auto& e : r.trace.events)
			if (!std::holds_alternative<Skipped>(e)) stripped.events.push_back(e);
		const auto report = check_enrichment(n, ref, r.net, stripped);
		REQUIRE_FALSE(report.constraint2_violations.empty());
		for (const auto& f : report.constraint2_violations) {
			CHECK(f.feature == "A");
			CHECK((f.left == "a6" || f.right == "a6"));
		}
	}
	SUBCASE("dropping the reference's rows breaks constraint 2") {
		const auto report = check_enrichment(n, ref, n, MergeTrace{});
		CHECK(report.constraint1_violations.empty());
		CHECK_FALSE(report.constraint2_violations.empty());
	}
}

TEST_CASE("opposed reference facts need no certificate") {
	CPNet n;
	n.add_feature("A", {"a1", "a2"}).add_feature("B", {"b1", "b2"});
	n.add_relation("B", rel("A=a1 : b2 > b1"));
	CPNet ref = n;
	ref.set_relations("B", {rel("A=a1 : b1 > b2")});
	CHECK(check_enrichment(n, ref, n, MergeTrace{}).passed());
}

TEST_CASE("property suite") {
	const auto small = property_suite({3, 2, 3, 0.7, 0.1, 7}, 20);
	CHECK(small.trials == 20);
	CHECK(small.total_failures() == 0);
	CHECK(small.str().find("trials 20") != std::string::npos);

	const auto big = property_suite({3, 2, 3, 0.7, 0.1, 0}, 500);
	CHECK(big.total_failures() == 0);
	if (big.total_failures()) MESSAGE(big.str());

	const auto wide = property_suite({4, 2, 4, 0.8, 0.3, 1000}, 300);
	CHECK(wide.total_failures() == 0);
	if (wide.total_failures()) MESSAGE(wide.str());

	CHECK_THROWS_AS(property_suite({1, 2, 3, 0.7, 0.1, 0}, 5), std::invalid_argument);
	CHECK_THROWS_AS(property_suite({3, 2, 3, 0.7, 0.1, 0}, 0), std::invalid_argument);
}

TEST_CASE("the checker catches a merge that forgets its certificates") {
	// Mutation test: strip skip and tie events and the oracle must notice.
	std::size_t noticed = 0;
	for (std::uint64_t seed = 0; seed < 300; ++seed) {
		const CPNet n = generate_net({3, 3, 4, 0.9, 0.1, seed});
		const CPNet ref = generate_net({3, 3, 4, 0.9, 0.1, seed + 7777});
		const auto r = enrich(n, ref);
		MergeTrace stripped;
		bool had = false;
		for (const auto& e : r.trace.events) {
			if (std::holds_alternative<Skipped>(e) || std::holds_alternative<TieCreated>(e))
				had = true;
			else
				stripped.events.push_back(e);
		}
		if (had && !check_enrichment(n, ref, r.net, stripped).passed()) ++noticed;
	}
	CHECK(noticed > 0);
}

TEST_CASE("exhaustive two-feature suite") {
	const auto nets = enumerate_chain_nets();
	CHECK(nets.size() == 57);
	std::set<std::string> distinct;
	for (const auto& n : nets) {
		CHECK(validate(n).ok());
		CHECK(detect_cycles(n).empty());
		distinct.insert(serialize(n));
	}
	CHECK(distinct.size() == nets.size());

	const auto summary = exhaustive_suite();
	CHECK(summary.trials == 57 * 57);
	CHECK(summary.total_failures() == 0);
	if (summary.total_failures()) MESSAGE(summary.str());
}

TEST_CASE("summary formatting and accumulation") {
	SuiteSummary a, b;
	a.trials = 2;
	b.trials = 3;
	b.constraint2_failures = 1;
	b.failures.push_back({9, "constraint2", "A | T | a1 > a2"});
	a += b;
	CHECK(a.trials == 5);
	CHECK(a.total_failures() == 1);
	CHECK(a.str().find("FAIL 9 constraint2 A | T | a1 > a2") != std::string::npos);
}
