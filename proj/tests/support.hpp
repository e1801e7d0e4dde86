#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "cpnet/format.hpp"
#include "cpnet/model.hpp"

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(CPNET_TEST_DATA) + "/" + name; }

inline std::string read_data(const std::string& name) {
	std::ifstream in(data_path(name), std::ios::binary);
	std::ostringstream buf;
	buf << in.rdbuf();
	return buf.str();
}

inline cpnet::CPNet load(const std::string& name) { return cpnet::parse(read_data(name)); }

/// Relation from "cond : ordering" text, e.g. "B=b1 : a1 > a2 ~ a3" or "T : a1".
inline cpnet::PreferenceRelation rel(const std::string& text) {
	cpnet::PreferenceRelation out;
	std::istringstream in(text);
	std::string word;
	bool in_ordering = false;
	out.levels.emplace_back();
	while (in >> word) {
		if (!in_ordering) {
			if (word == ":") {
				in_ordering = true;
			} else if (word != "T" && word != "&") {
				auto eq = word.find('=');
				out.condition.assign(word.substr(0, eq), word.substr(eq + 1));
			}
		} else if (word == ">") {
			out.levels.emplace_back();
		} else if (word != "~") {
			out.levels.back().insert(word);
		}
	}
	return out;
}

}  // namespace testing
