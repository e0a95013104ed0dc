#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "zlap/graph.hpp"

namespace zlap {

inline constexpr const char* kVersion = "zlap 0.1.0";

// Edge-list text: "u v w" per line, '#' comments, optional leading header
// "n <int> directed <0|1>". Without a header the vertex count is inferred
// and the graph is undirected. An explicit directedness overrides the file.
Graph parse_edge_list(const std::string& text,
                      std::optional<bool> directed = std::nullopt);

// Inverse of parse_edge_list; weights printed with shortest round-trip
// precision so parse(serialize(g)) is bit-identical.
std::string serialize_edge_list(const Graph& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

struct Scenario {
  std::string graph_path;
  std::optional<bool> directed;
  std::string command;  // transform | evolve | spectrum | filter | bottleneck | heal | epidemic
  nlohmann::json params = nlohmann::json::object();
};

// Accepts either a full scenario object ({"graph", "command", "params", ...})
// or a bare params fragment; `command` must agree with the invoked command
// when both are present. Relative graph paths are resolved against base_dir.
Scenario scenario_from_json(const nlohmann::json& j, const std::string& command,
                            const std::string& base_dir = "");

struct Report {
  std::string command;
  nlohmann::json inputs;
  nlohmann::json outputs;
  std::string version = kVersion;
};

Report run_scenario(const Scenario& s);

enum class ReportFormat { Json, Csv };
ReportFormat format_from_name(const std::string& name);

// JSON is canonical (stable key order, full double precision); CSV covers
// vector- and edge-list-valued outputs only.
std::string emit_report(const Report& r, ReportFormat format);

}  // namespace zlap
