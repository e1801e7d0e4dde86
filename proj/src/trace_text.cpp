#include "cpnet/trace_text.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <vector>

#include "cpnet/format.hpp"

namespace cpnet {

namespace {

std::string join(const std::vector<Value>& values, char sep) {
	std::string out;
	for (std::size_t i = 0; i < values.size(); ++i) {
		if (i) out += sep;
		out += values[i];
	}
	return out;
}

std::string join(const std::set<Value>& values, char sep) {
	return join(std::vector<Value>(values.begin(), values.end()), sep);
}

std::vector<std::string> split(std::string_view s, char sep) {
	std::vector<std::string> out;
	std::size_t start = 0;
	while (true) {
		std::size_t at = s.find(sep, start);
		out.emplace_back(s.substr(start, at == std::string_view::npos ? s.npos : at - start));
		if (at == std::string_view::npos) break;
		start = at + 1;
	}
	return out;
}

struct Visitor {
	std::string operator()(const FeatureAdded& e) const {
		return "FEATURE_ADDED " + e.feature + " - " + join(e.domain, ',');
	}
	std::string operator()(const CompleteMerge& e) const {
		return "COMPLETE_MERGE " + e.feature + " " + e.relation.condition.str() + " " +
		       e.relation.ordering_str();
	}
	std::string operator()(const PartialMerge& e) const {
		return "PARTIAL_MERGE " + e.feature + " " + e.condition.str() + " into=" + e.target.ordering_str();
	}
	std::string operator()(const PartialInsert& e) const {
		return "INSERT " + e.feature + " " + e.condition.str() + " " + e.value + " at=" +
		       std::to_string(e.index);
	}
	std::string operator()(const TieCreated& e) const {
		return "TIE " + e.feature + " " + e.condition.str() + " " + e.value + " with=" + join(e.tied_with, ',');
	}
	std::string operator()(const Skipped& e) const {
		return "SKIP " + e.feature + " " + e.condition.str() + " " + e.value +
		       " above=" + e.certificate.above + " below=" + e.certificate.below;
	}
	std::string operator()(const NoOp& e) const {
		return "NOOP " + e.feature + " " + e.condition.str() + " -";
	}
	std::string operator()(const CycleFound& e) const { return "CYCLE - - " + join(e.cycle, ','); }
};

class TraceLineParser {
public:
	TraceLineParser(std::string_view line, int lineno) : lineno_(lineno) {
		std::istringstream in{std::string(line)};
		std::string word;
		while (in >> word) fields_.push_back(word);
	}

	bool blank() const { return fields_.empty() || fields_[0][0] == '#'; }

	TraceEvent event() {
		if (fields_.size() < 4) fail("expected 'EVENT feature condition detail'");
		const std::string& kind = fields_[0];
		const std::string& feature = fields_[1];
		if (kind == "FEATURE_ADDED") {
			arity(4);
			return FeatureAdded{feature, split(fields_[3], ',')};
		}
		if (kind == "CYCLE") {
			arity(4);
			return CycleFound{split(fields_[3], ',')};
		}
		const Condition cond = condition(fields_[2]);
		if (kind == "COMPLETE_MERGE") {
			arity(4);
			return CompleteMerge{feature, PreferenceRelation{cond, ordering(fields_[3])}};
		}
		if (kind == "PARTIAL_MERGE") {
			arity(4);
			return PartialMerge{feature, cond, PreferenceRelation{cond, ordering(keyed(fields_[3], "into"))}};
		}
		if (kind == "NOOP") {
			arity(4);
			return NoOp{feature, cond};
		}
		if (kind == "INSERT") {
			arity(5);
			const std::string at = keyed(fields_[4], "at");
			std::size_t index = 0;
			auto [ptr, ec] = std::from_chars(at.data(), at.data() + at.size(), index);
			if (ec != std::errc{} || ptr != at.data() + at.size()) fail("bad insert index '" + at + "'");
			return PartialInsert{feature, cond, fields_[3], index};
		}
		if (kind == "TIE") {
			arity(5);
			auto with = split(keyed(fields_[4], "with"), ',');
			return TieCreated{feature, cond, fields_[3], std::set<Value>(with.begin(), with.end())};
		}
		if (kind == "SKIP") {
			arity(6);
			return Skipped{feature, cond, fields_[3],
				       Infeasible{keyed(fields_[4], "above"), keyed(fields_[5], "below")}};
		}
		fail("unknown event '" + kind + "'");
	}

private:
	[[noreturn]] void fail(const std::string& msg) const { throw ParseError({lineno_, 1}, msg); }

	void arity(std::size_t n) const {
		if (fields_.size() != n)
			fail(fields_[0] + " takes " + std::to_string(n) + " fields, found " +
			     std::to_string(fields_.size()));
	}

	std::string keyed(const std::string& field, std::string_view key) const {
		const std::string prefix = std::string(key) + "=";
		if (field.rfind(prefix, 0) != 0) fail("expected '" + prefix + "...', found '" + field + "'");
		return field.substr(prefix.size());
	}

	Condition condition(const std::string& text) const {
		Condition out;
		if (text == "T") return out;
		for (const auto& part : split(text, '&')) {
			auto eq = part.find('=');
			if (eq == std::string::npos || eq == 0 || eq + 1 == part.size())
				fail("bad condition '" + text + "'");
			if (out.assigns(part.substr(0, eq))) fail("feature assigned twice in '" + text + "'");
			out.assign(part.substr(0, eq), part.substr(eq + 1));
		}
		return out;
	}

	std::vector<Level> ordering(const std::string& text) const {
		std::vector<Level> levels;
		for (const auto& level : split(text, '>')) {
			Level l;
			for (const auto& v : split(level, '~')) {
				if (v.empty()) fail("bad ordering '" + text + "'");
				l.insert(v);
			}
			levels.push_back(std::move(l));
		}
		return levels;
	}

	int lineno_;
	std::vector<std::string> fields_;
};

}  // namespace

std::string format_event(const TraceEvent& event) { return std::visit(Visitor{}, event); }

std::string format_trace(const MergeTrace& trace) {
	std::string out;
	for (const auto& e : trace.events) out += format_event(e) + "\n";
	return out;
}

MergeTrace parse_trace(std::string_view text) {
	MergeTrace trace;
	int lineno = 0;
	for (const auto& line : split(text, '\n')) {
		++lineno;
		TraceLineParser p(line, lineno);
		if (p.blank()) continue;
		trace.events.push_back(p.event());
	}
	return trace;
}

std::string format_facts(const FactSet& facts) {
	std::vector<std::string> lines;
	lines.reserve(facts.size());
	for (const auto& f : facts) lines.push_back(f.str());
	std::sort(lines.begin(), lines.end());
	std::string out;
	for (const auto& l : lines) out += l + "\n";
	return out;
}

}  // namespace cpnet
