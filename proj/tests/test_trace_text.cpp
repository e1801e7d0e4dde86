#include <doctest.h>

#include "cpnet/format.hpp"
#include "cpnet/oracle.hpp"
#include "cpnet/trace_text.hpp"
#include "support.hpp"

using namespace cpnet;
using testing::rel;

TEST_CASE("event lines") {
	const Condition b1 = Condition::of("B", "b1");
	CHECK(format_event(FeatureAdded{"C", {"c1", "c2"}}) == "FEATURE_ADDED C - c1,c2");
	CHECK(format_event(CompleteMerge{"B", rel("A=a5 : b1 > b2")}) == "COMPLETE_MERGE B A=a5 b1>b2");
	CHECK(format_event(PartialMerge{"A", b1, rel("B=b1 : a1 > a2 ~ a3")}) == "PARTIAL_MERGE A B=b1 into=a1>a2~a3");
	CHECK(format_event(PartialInsert{"A", b1, "a7", 2}) == "INSERT A B=b1 a7 at=2");
	CHECK(format_event(TieCreated{"A", b1, "a5", {"a1", "a9"}}) == "TIE A B=b1 a5 with=a1,a9");
	CHECK(format_event(Skipped{"A", b1, "a6", Infeasible{"a4", "a3"}}) == "SKIP A B=b1 a6 above=a4 below=a3");
	CHECK(format_event(NoOp{"B", Condition{}}) == "NOOP B T -");
	CHECK(format_event(CycleFound{{"A", "B", "C"}}) == "CYCLE - - A,B,C");
}

TEST_CASE("trace text round trip") {
	const auto r = enrich(testing::load("fig3a.cpn"), testing::load("fig3b.cpn"));
	const std::string text = format_trace(r.trace);
	CHECK(parse_trace(text) == r.trace);
	CHECK(parse_trace("# header\n\n" + text + "\n") == r.trace);

	for (std::uint64_t seed = 0; seed < 100; ++seed) {
		const auto n = generate_net({4, 2, 4, 0.7, 0.2, seed});
		const auto m = generate_net({4, 2, 4, 0.7, 0.2, seed + 1000});
		const auto t = enrich(n, m).trace;
		CHECK(parse_trace(format_trace(t)) == t);
	}
}

TEST_CASE("malformed trace lines") {
	auto line_of = [](std::string_view text) {
		try {
			parse_trace(text);
		} catch (const ParseError& e) {
			return e.where().line;
		}
		return 0;
	};
	CHECK(line_of("NOOP A B=b1 -\nBOGUS A B=b1 x\n") == 2);
	CHECK(line_of("INSERT A B=b1 a7 at=x\n") == 1);
	CHECK(line_of("INSERT A B=b1 a7 2\n") == 1);
	CHECK(line_of("\n\nSKIP A B=b1 a6 above=a4\n") == 3);
	CHECK(line_of("NOOP A B= -\n") == 1);
	CHECK(line_of("COMPLETE_MERGE B A=a5 b1>>b2\n") == 1);
	CHECK(line_of("NOOP A\n") == 1);
}

TEST_CASE("fact listing is sorted") {
	FactSet facts{Fact::strict("B", Condition::of("A", "a1"), "b2", "b1"),
		      Fact::indifferent("A", Condition{}, "a3", "a1"), Fact::strict("A", Condition{}, "a1", "a2")};
	CHECK(format_facts(facts) == "A | T | a1 > a2\nA | T | a1 ~ a3\nB | A=a1 | b2 > b1\n");
	CHECK(format_facts({}).empty());
}
