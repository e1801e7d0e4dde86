#include "cpnet/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "cpnet/format.hpp"
#include "cpnet/merge.hpp"
#include "cpnet/oracle.hpp"
#include "cpnet/trace_text.hpp"
#include "cpnet/unfold.hpp"

namespace cpnet::cli {

namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kUsage = 2;

/// Raised for unreadable inputs and unwritable outputs.
struct IoError : Error {
	using Error::Error;
};

/// A parse error that remembers which file it came from.
struct FileParseError : Error {
	FileParseError(const std::string& path, const ParseError& e) : Error(path + ":" + e.what()) {}
};

std::string read_file(const std::string& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) throw IoError("cannot read '" + path + "'");
	std::ostringstream buf;
	buf << in.rdbuf();
	return buf.str();
}

CPNet load_net(const std::string& path) {
	try {
		return parse(read_file(path));
	} catch (const ParseError& e) {
		throw FileParseError(path, e);
	}
}

// Temp file next to the target, then rename, so a failed run never leaves a
// partial output behind.
void write_file(const std::string& path, const std::string& data) {
	const fs::path target(path);
	fs::path tmp = target;
	tmp += ".tmp";
	{
		std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
		if (!f) throw IoError("cannot write '" + path + "'");
		f << data;
		if (!f.flush()) throw IoError("cannot write '" + path + "'");
	}
	std::error_code ec;
	fs::rename(tmp, target, ec);
	if (ec) {
		fs::remove(tmp, ec);
		throw IoError("cannot write '" + path + "'");
	}
}

void emit(const std::string& path, const std::string& data, std::ostream& out) {
	if (path.empty())
		out << data;
	else
		write_file(path, data);
}

struct Options {
	std::string initial, reference, result, input, output;
	std::string on_cycle = "warn";
	bool trace = false;
	std::string trace_file;
	std::uint64_t seed = 1;
	int trials = 100;
	GeneratorParams params;
	bool exhaustive = false;
};

int cmd_enrich(const Options& o, std::ostream& out, std::ostream& err) {
	const CPNet initial = load_net(o.initial);
	const CPNet reference = load_net(o.reference);
	const auto policy = o.on_cycle == "reject" ? CyclePolicy::reject : CyclePolicy::warn;

	EnrichResult r;
	try {
		r = enrich(initial, reference, policy);
	} catch (const CyclicResult& e) {
		err << "error: " << e.what() << "\n";
		return kDomainFailure;
	}

	const std::string trace = format_trace(r.trace);
	if (!o.trace_file.empty()) write_file(o.trace_file, trace);
	if (o.trace) err << trace;
	if (o.trace_file.empty() && !o.trace) {
		for (const auto& e : r.trace.events)
			if (std::holds_alternative<CycleFound>(e)) err << "warning: " << format_event(e) << "\n";
	}
	emit(o.output, serialize(r.net), out);
	return kOk;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream&) {
	const auto report = validate(load_net(o.input));
	for (const auto& v : report.violations) out << v.feature << ": " << v.message << "\n";
	return report.ok() ? kOk : kDomainFailure;
}

int cmd_transform(const Options& o, std::ostream& out, CPNet (*fn)(const CPNet&)) {
	emit(o.output, serialize(fn(load_net(o.input))), out);
	return kOk;
}

int cmd_facts(const Options& o, std::ostream& out) {
	emit(o.output, format_facts(fact_set(unfold_net(load_net(o.input)))), out);
	return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
	const CPNet initial = load_net(o.initial);
	const CPNet reference = load_net(o.reference);
	const CPNet result = load_net(o.result);
	MergeTrace trace;
	if (!o.trace_file.empty()) {
		try {
			trace = parse_trace(read_file(o.trace_file));
		} catch (const ParseError& e) {
			throw FileParseError(o.trace_file, e);
		}
	}
	const auto report = check_enrichment(initial, reference, result, trace);
	for (const auto& f : report.constraint1_violations) out << "constraint1 " << f.str() << "\n";
	for (const auto& f : report.constraint2_violations) out << "constraint2 " << f.str() << "\n";
	out << (report.passed() ? "passed\n" : "failed\n");
	return report.passed() ? kOk : kDomainFailure;
}

int cmd_proptest(const Options& o, std::ostream& out) {
	SuiteSummary summary;
	if (o.exhaustive) {
		summary = exhaustive_suite();
	} else {
		GeneratorParams p = o.params;
		p.seed = o.seed;
		summary = property_suite(p, o.trials);
	}
	out << "seed " << o.seed << "\n" << summary.str();
	return summary.total_failures() == 0 ? kOk : kDomainFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
	CLI::App app{"Asymmetric merging (enrichment) of CP-nets", "cpnet"};
	app.require_subcommand(1);
	Options o;

	auto* enrich_cmd = app.add_subcommand("enrich", "Enrich INITIAL with REFERENCE");
	enrich_cmd->add_option("initial", o.initial, "Initial net (.cpn)")->required();
	enrich_cmd->add_option("reference", o.reference, "Reference net (.cpn)")->required();
	enrich_cmd->add_option("-o,--output", o.output, "Output path (default: stdout)");
	enrich_cmd->add_option("--on-cycle", o.on_cycle, "What to do with a cyclic result")
	    ->check(CLI::IsMember({"warn", "reject"}));
	enrich_cmd->add_flag("--trace", o.trace, "Write the merge trace to stderr");
	enrich_cmd->add_option("--trace-file", o.trace_file, "Write the merge trace to a file");

	auto* validate_cmd = app.add_subcommand("validate", "Report well-formedness violations");
	validate_cmd->add_option("input", o.input, "Net (.cpn)")->required();

	auto* unfold_cmd = app.add_subcommand("unfold", "Unfold unconditional relations");
	unfold_cmd->add_option("input", o.input, "Net (.cpn)")->required();
	unfold_cmd->add_option("-o,--output", o.output, "Output path (default: stdout)");

	auto* fold_cmd = app.add_subcommand("fold", "Fold covering single-feature rows");
	fold_cmd->add_option("input", o.input, "Net (.cpn)")->required();
	fold_cmd->add_option("-o,--output", o.output, "Output path (default: stdout)");

	auto* facts_cmd = app.add_subcommand("facts", "List the pairwise facts of the unfolded net");
	facts_cmd->add_option("input", o.input, "Net (.cpn)")->required();
	facts_cmd->add_option("-o,--output", o.output, "Output path (default: stdout)");

	auto* check_cmd = app.add_subcommand("check", "Check an enrichment result against both constraints");
	check_cmd->add_option("initial", o.initial, "Initial net (.cpn)")->required();
	check_cmd->add_option("reference", o.reference, "Reference net (.cpn)")->required();
	check_cmd->add_option("result", o.result, "Enriched net (.cpn)")->required();
	check_cmd->add_option("--trace-file", o.trace_file, "Trace written by enrich --trace-file");

	auto* prop_cmd = app.add_subcommand("proptest", "Run the randomized property suite");
	prop_cmd->add_option("--seed", o.seed, "Base seed");
	prop_cmd->add_option("--trials", o.trials, "Number of random pairs")->check(CLI::PositiveNumber);
	prop_cmd->add_option("--features", o.params.feature_count, "Maximum feature count")
	    ->check(CLI::Range(2, 26));
	prop_cmd->add_option("--min-domain", o.params.min_domain, "Smallest domain")->check(CLI::PositiveNumber);
	prop_cmd->add_option("--max-domain", o.params.max_domain, "Largest domain")->check(CLI::PositiveNumber);
	prop_cmd->add_option("--density", o.params.relation_density, "Relation density")->check(CLI::Range(0.0, 1.0));
	prop_cmd->add_option("--indifference", o.params.indifference_probability, "Indifference probability")
	    ->check(CLI::Range(0.0, 1.0));
	prop_cmd->add_flag("--exhaustive", o.exhaustive, "Enumerate all 2-feature/2-value chain net pairs");

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp&) {
		out << app.help();
		return kOk;
	} catch (const CLI::ParseError& e) {
		err << "error: " << e.what() << "\n";
		return kUsage;
	}

	try {
		if (enrich_cmd->parsed()) return cmd_enrich(o, out, err);
		if (validate_cmd->parsed()) return cmd_validate(o, out, err);
		if (unfold_cmd->parsed()) return cmd_transform(o, out, &unfold_net);
		if (fold_cmd->parsed()) return cmd_transform(o, out, &fold_net);
		if (facts_cmd->parsed()) return cmd_facts(o, out);
		if (check_cmd->parsed()) return cmd_check(o, out);
		if (prop_cmd->parsed()) return cmd_proptest(o, out);
	} catch (const FileParseError& e) {
		err << "error: " << e.what() << "\n";
		return kUsage;
	} catch (const IoError& e) {
		err << "error: " << e.what() << "\n";
		return kUsage;
	} catch (const std::invalid_argument& e) {
		err << "error: " << e.what() << "\n";
		return kUsage;
	} catch (const Error& e) {
		err << "error: " << e.what() << "\n";
		return kDomainFailure;
	}
	return kUsage;
}

}  // namespace cpnet::cli
