#pragma once

#include <string>
#include <string_view>

#include "graphlim/graph.hpp"

namespace graphlim {

/// graph6 encoding of the underlying unlabeled graph (labels are dropped).
std::string to_graph6(const Graph& g);

/// Parses one graph6 string; an optional ">>graph6<<" header and trailing
/// newline are accepted. Throws ParseError.
Graph from_graph6(std::string_view text);

}  // namespace graphlim
