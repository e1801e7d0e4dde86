#pragma once

// Line-oriented text form of a MergeTrace, one event per line:
//
//   EVENT feature condition detail
//
//   FEATURE_ADDED C - c1,c2
//   COMPLETE_MERGE B A=a5 b1>b2
//   PARTIAL_MERGE A B=b1 into=a1>a2>a3>a4
//   INSERT A B=b1 a7 at=2
//   TIE A B=b1 a5 with=a1
//   SKIP A B=b1 a6 above=a4 below=a3
//   NOOP A B=b1 -
//   CYCLE - - A,B,C,D,E
//
// `-` fills fields an event does not use; `T` is the empty condition.

#include <string>
#include <string_view>

#include "cpnet/merge.hpp"
#include "cpnet/model.hpp"

namespace cpnet {

std::string format_event(const TraceEvent& event);
std::string format_trace(const MergeTrace& trace);

/// Throws ParseError on a malformed line. Blank lines and `#` comments are
/// ignored.
MergeTrace parse_trace(std::string_view text);

/// One fact per line, `feature | condition | left REL right`, sorted.
std::string format_facts(const FactSet& facts);

}  // namespace cpnet
