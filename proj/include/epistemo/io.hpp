#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "epistemo/conceptnet.hpp"
#include "epistemo/corpus.hpp"
#include "epistemo/dialogue.hpp"
#include "epistemo/metrics.hpp"
#include "epistemo/retrieval.hpp"

namespace epistemo {

/// Written into every output file.
struct Provenance {
  std::string tool_version;
  std::string config_digest;
};

/// Write to a sibling temp file, then rename over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

// Transcript JSON, schema_version "1". Serialization is byte-stable.
std::string serialize_transcript(const Transcript& transcript);
/// Throws ParseError naming the turn and field for schema violations, and for
/// any unsupported schema_version.
Transcript parse_transcript(std::string_view bytes);
void write_transcript(const Transcript& transcript, const std::filesystem::path& path);
Transcript read_transcript(const std::filesystem::path& path);

std::string serialize_corpus(const Corpus& corpus, const Provenance& provenance);
Corpus parse_corpus(std::string_view bytes);
std::string serialize_index(const RetrievalIndex& index, const Provenance& provenance);
RetrievalIndex parse_index(std::string_view bytes);

enum class ExportFormat { GraphML, Dot, Json, Csv };

std::optional<ExportFormat> parse_export_format(std::string_view s);

std::map<std::string, std::string> default_color_map();

struct ExportOptions {
  ExportFormat format = ExportFormat::GraphML;
  Level level = Level::Concept;
  bool include_maieutic = true;
  std::map<std::string, std::string> color_map = default_color_map();
};

struct ExportResult {
  std::string bytes;
  std::vector<std::string> warnings;  // e.g. agents missing from color_map
};

inline constexpr std::string_view kNeutralColor = "gray";

/// GraphML or DOT for the requested view; nodes and edges in sorted order.
ExportResult export_graph(const ConceptNetwork& network, const ExportOptions& options,
                          const Provenance& provenance);

struct GraphDocument {
  Graph graph;
  std::map<std::string, std::string> graph_attributes;
};

/// Reads GraphML produced by export_graph. Throws ParseError.
GraphDocument parse_graphml(std::string_view bytes);

/// Long format: level,include_maieutic,k,n,c_d,isolates with a leading '#' provenance line.
std::string curves_csv(const std::vector<CentralityCurve>& curves, const Provenance& provenance);

nlohmann::ordered_json to_json(const CentralityReport& report);
nlohmann::ordered_json to_json(const CentralityCurve& curve);
nlohmann::ordered_json to_json(const ConditionDelta& delta);
nlohmann::ordered_json to_json(const CoherenceReport& report);

}  // namespace epistemo
