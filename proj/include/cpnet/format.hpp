#pragma once

// The `.cpn` text format.
//
//   # comment
//   feature A: a1, a2, a3
//   feature B: b1, b2
//
//   cpt A:
//   - T : a1 > a2 ~ a3
//   cpt B:
//   - A=a1 : b1 > b2
//   - A=a2 & C=c1 : b2 > b1
//
// Feature declarations come first, then one block per CPT. `T` is the empty
// condition, `>` separates levels and `~` joins values inside a level.

#include <string>
#include <string_view>

#include "cpnet/model.hpp"

namespace cpnet {

struct SourceLocation {
	int line = 1;    // 1-based
	int column = 1;  // 1-based, in bytes
	friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

class ParseError : public Error {
public:
	ParseError(SourceLocation where, const std::string& message);

	SourceLocation where() const { return where_; }
	/// The message without the location prefix.
	const std::string& detail() const { return detail_; }

private:
	SourceLocation where_;
	std::string detail_;
};

/// Parses a `.cpn` document. The result is structurally well-formed;
/// ordering contradictions are left to validate().
CPNet parse(std::string_view text);

/// Canonical rendering: features in declaration order, relations in CPT
/// order, conditions and within-level values in lexical order, LF endings.
/// Empty CPTs are omitted. Throws InvalidNet.
std::string serialize(const CPNet& net);

}  // namespace cpnet
