#pragma once

#include <map>
#include <string>
#include <vector>

#include "samrec/eval.hpp"
#include "samrec/graph.hpp"
#include "samrec/recommend.hpp"

namespace samrec {

// JSON shapes shared by the HTTP service, the C surface and the CLI. Scores
// are serialized with six decimal places.

std::string ranked_list_json(const RankedList& list);
std::string ranked_entries_json(const RankedList& list);   // just the entries array
std::string eval_report_json(const EvalReport& report);
std::string latency_report_json(const std::map<std::string, LatencyStats>& stats);
std::string graph_stats_json(const ContextGraph& graph);
std::string interactions_json(const std::vector<Interaction>& list);
std::string neighbors_json(const std::vector<NeighborRef>& list);

// Body of POST /interactions: {user, asset, type, polarity?, intensity?,
// text?, timestamp}.
Interaction interaction_from_json(const std::string& body);

} // namespace samrec
