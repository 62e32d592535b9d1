#pragma once

#include <string>

#include "hgdyn/dynamic_update.hpp"
#include "hgdyn/triads.hpp"
#include "json.hpp"

namespace hgdyn::cli {

using Json = nlohmann::ordered_json;

enum class Motif { hyperedge, vertex, temporal, all };

Motif parse_motif(const std::string& name);
std::string to_string(Motif m);
CountOptions options_for(Motif m, Timestamp t_delta);

std::string t_delta_string(Timestamp t);
Timestamp parse_t_delta(const std::string& text);

Json class_table_json();
Json counts_json(const TriadCounts& c, const CountOptions& opt);
Json stats_json(const UpdateStats& s);

// Empty when equal, else a description of the first differing component.
std::string first_difference(const TriadCounts& got, const TriadCounts& want, const CountOptions& opt);

}  // namespace hgdyn::cli
