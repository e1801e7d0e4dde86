#include <doctest.h>

#include "cpnet/format.hpp"
#include "cpnet/oracle.hpp"
#include "support.hpp"

using namespace cpnet;
using testing::rel;

TEST_CASE("parse the three-feature chain") {
	const CPNet net = testing::load("fig1.cpn");
	REQUIRE(net.size() == 3);
	CHECK(net.features()[0].name == "A");
	CHECK(net.feature("A").domain == std::vector<Value>{"a1", "a2", "a3"});
	CHECK(net.cpt("A").relations == std::vector<PreferenceRelation>{rel("T : a1 > a2 > a3")});
	CHECK(net.cpt("B").relations ==
	      std::vector<PreferenceRelation>{rel("A=a1 : b1 > b2"), rel("A=a2 : b2 > b1"), rel("A=a3 : b1 > b2")});
	CHECK(net.cpt("C").relations == std::vector<PreferenceRelation>{rel("B=b1 : c1 > c2"), rel("B=b2 : c2 > c1")});
	CHECK(validate(net).ok());
}

TEST_CASE("parse details") {
	SUBCASE("indifference makes one level") {
		const CPNet net = parse("feature A: a1, a5\nfeature B: b1\ncpt A:\n- B=b1 : a5 ~ a1\n");
		REQUIRE(net.cpt("A").relations.size() == 1);
		CHECK(net.cpt("A").relations[0].levels == std::vector<Level>{{"a1", "a5"}});
	}
	SUBCASE("multi-feature condition and blank lines") {
		const CPNet net = parse("\n# x\nfeature A: a1, a2\nfeature B: b1\nfeature C: c1\n\ncpt A:\n\n- C=c1 & B=b1 : a2 > a1\n");
		CHECK(net.cpt("A").relations[0] == rel("B=b1 & C=c1 : a2 > a1"));
	}
	SUBCASE("CRLF line endings and stray whitespace") {
		const CPNet net = parse("feature A:a1,a2\r\ncpt A:\r\n-  T:a2>a1   \r\n");
		CHECK(net.cpt("A").relations[0] == rel("T : a2 > a1"));
	}
	SUBCASE("contradictions parse and fail validation") {
		const CPNet net = testing::load("contradiction.cpn");
		CHECK_FALSE(validate(net).ok());
	}
	SUBCASE("empty document") {
		CHECK(parse("").empty());
		CHECK(parse("# only a comment\n").empty());
	}
}

TEST_CASE("malformed documents report their location") {
	struct Case {
		const char* file;
		int line, column;
		const char* message;
	};
	const Case cases[] = {
	    {"bad_keyword.cpn", 1, 1, "expected 'feature'"},
	    {"dangling_level.cpn", 3, 12, "expected identifier"},
	    {"digit_identifier.cpn", 1, 12, "cannot start with a digit"},
	    {"duplicate_feature.cpn", 2, 9, "duplicate feature 'A'"},
	    {"duplicate_value_in_relation.cpn", 3, 12, "duplicate value 'a1'"},
	    {"empty_domain_entry.cpn", 1, 15, "expected identifier"},
	    {"feature_after_cpt.cpn", 3, 1, "after a cpt block"},
	    {"missing_colon.cpn", 3, 5, "expected ':'"},
	    {"relation_outside_cpt.cpn", 2, 1, "outside a cpt block"},
	    {"repeated_assignment.cpn", 4, 10, "assigned twice"},
	    {"self_condition.cpn", 3, 3, "owning feature"},
	    {"unknown_cpt_feature.cpn", 2, 5, "undeclared feature 'B'"},
	    {"unknown_operator.cpn", 3, 10, "unknown operator '<'"},
	    {"unknown_value.cpn", 3, 12, "not in the domain"},
	};
	for (const auto& c : cases) {
		CAPTURE(c.file);
		try {
			parse(testing::read_data(std::string("malformed/") + c.file));
			FAIL("parsed a malformed document");
		} catch (const ParseError& e) {
			CHECK(e.where() == SourceLocation{c.line, c.column});
			CHECK(e.detail().find(c.message) != std::string::npos);
			CHECK(std::string(e.what()).rfind(std::to_string(c.line) + ":" + std::to_string(c.column) + ": ", 0) == 0);
		}
	}
}

TEST_CASE("more syntax errors") {
	CHECK_THROWS_AS(parse("feature A: a1\ncpt A:\ncpt A:\n"), ParseError);
	CHECK_THROWS_AS(parse("feature A: a1, a1\n"), ParseError);
	CHECK_THROWS_AS(parse("feature A:\n"), ParseError);
	CHECK_THROWS_AS(parse("feature A: a1, a2\nfeature B: b1\ncpt A:\n- B : a1 > a2\n"), ParseError);
	CHECK_THROWS_AS(parse("feature A: a1, a2\nfeature B: b1\ncpt A:\n- B=b9 : a1 > a2\n"), ParseError);
	CHECK_THROWS_AS(parse("feature A: a1, a2\ncpt A:\n- Q=q1 : a1 > a2\n"), ParseError);
	CHECK_THROWS_AS(parse("feature A: a1, a2\ncpt A:\n- T : a1 a2\n"), ParseError);
	CHECK_THROWS_AS(parse("feature A: a1, a2\ncpt A:\n- T : a1 > a2 extra\n"), ParseError);
}

TEST_CASE("serialize is canonical") {
	CHECK(serialize(CPNet{}) == "# cpn\n");
	CHECK(serialize(testing::load("fig3c.cpn")) == testing::read_data("fig3c.cpn"));

	const std::string expected =
	    "# cpn\nfeature A: a1, a2, a3\nfeature B: b1, b2\nfeature C: c1, c2\n"
	    "\ncpt A:\n- T : a1 > a2 > a3\n"
	    "\ncpt B:\n- A=a1 : b1 > b2\n- A=a2 : b2 > b1\n- A=a3 : b1 > b2\n"
	    "\ncpt C:\n- B=b1 : c1 > c2\n- B=b2 : c2 > c1\n";
	CHECK(serialize(testing::load("fig1.cpn")) == expected);

	CPNet bad;
	bad.add_feature("A", {"a1", "a2"});
	bad.set_relations("A", {rel("T : a1 > a9")});
	CHECK_THROWS_AS(serialize(bad), InvalidNet);
}

TEST_CASE("round trip is byte-stable on generated nets") {
	for (std::uint64_t seed = 0; seed < 300; ++seed) {
		const CPNet net = generate_net({5, 1, 4, 0.8, 0.3, seed});
		const std::string once = serialize(net);
		const CPNet back = parse(once);
		CHECK(back == net);
		CHECK(serialize(back) == once);
	}
}
