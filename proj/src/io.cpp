#include "epistemo/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "epistemo/errors.hpp"
#include "epistemo/text.hpp"

namespace epistemo {
namespace {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

[[noreturn]] void field_error(std::size_t turn, std::string_view field, const std::string& what) {
  throw ParseError("turn " + std::to_string(turn) + ": field '" + std::string(field) + "': " + what);
}

template <class T>
T required(const json& object, const char* key, std::size_t turn) {
  if (!object.contains(key)) field_error(turn, key, "missing");
  try {
    return object.at(key).get<T>();
  } catch (const json::exception&) {
    field_error(turn, key, "wrong type");
  }
}

template <class T>
T top_level(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + key + "' has the wrong type");
  }
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join(const std::vector<std::string>& words, char sep) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out.push_back(sep);
    out += words[i];
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

struct ColorLookup {
  const std::map<std::string, std::string>& map;
  std::vector<std::string>& warnings;
  std::set<std::string> warned;

  std::string operator()(const std::string& agent) {
    auto it = map.find(agent);
    if (it != map.end()) return it->second;
    if (warned.insert(agent).second) {
      warnings.push_back("no color for agent '" + agent + "', using " + std::string(kNeutralColor));
    }
    return std::string(kNeutralColor);
  }
};

std::string display_label(const ConceptNetwork& net, const std::string& agent) {
  const AgentInfo* info = net.find_agent(agent);
  return info ? info->display_label : agent;
}

std::string node_label(const Node& n, Level level) {
  if (level == Level::Keyword) return n.keyword;
  return std::to_string(n.chunk_index) + ": " + join(n.keywords, ' ');
}

std::string export_graphml(const ConceptNetwork& net, const Graph& g, const ExportOptions& options,
                           const Provenance& prov, ColorLookup& color) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" "
         "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
         "xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
         "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n";
  struct Key {
    const char* id;
    const char* domain;
    const char* name;
    const char* type;
  };
  static constexpr Key kKeys[] = {
      {"g_level", "graph", "level", "string"},
      {"g_include_maieutic", "graph", "include_maieutic", "boolean"},
      {"g_agent_filter", "graph", "agent_filter", "string"},
      {"g_tool_version", "graph", "tool_version", "string"},
      {"g_config_digest", "graph", "config_digest", "string"},
      {"n_agent", "node", "agent_id", "string"},
      {"n_label", "node", "display_label", "string"},
      {"n_color", "node", "color", "string"},
      {"n_chunk", "node", "chunk_index", "long"},
      {"n_ordinal", "node", "ordinal", "long"},
      {"n_keyword", "node", "keyword", "string"},
      {"n_rank", "node", "rank", "long"},
      {"n_keywords", "node", "keywords", "string"},
      {"n_degenerate", "node", "degenerate", "boolean"},
      {"n_boundary", "node", "boundary", "boolean"},
      {"e_kind", "edge", "kind", "string"},
      {"e_question", "edge", "mediating_question", "long"},
      {"e_lift", "edge", "lift", "boolean"},
  };
  for (const auto& k : kKeys) {
    out << "  <key id=\"" << k.id << "\" for=\"" << k.domain << "\" attr.name=\"" << k.name
        << "\" attr.type=\"" << k.type << "\"/>\n";
  }
  auto data = [&](const char* indent, const char* key, std::string_view value) {
    out << indent << "<data key=\"" << key << "\">" << xml_escape(value) << "</data>\n";
  };
  out << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  data("    ", "g_level", to_string(options.level));
  data("    ", "g_include_maieutic", options.include_maieutic ? "true" : "false");
  if (net.agent_filter) data("    ", "g_agent_filter", *net.agent_filter);
  data("    ", "g_tool_version", prov.tool_version);
  data("    ", "g_config_digest", prov.config_digest);
  for (const auto& n : g.nodes) {
    out << "    <node id=\"n" << n.id << "\">\n";
    data("      ", "n_agent", n.agent_id);
    data("      ", "n_label", display_label(net, n.agent_id));
    data("      ", "n_color", color(n.agent_id));
    data("      ", "n_chunk", std::to_string(n.chunk_index));
    data("      ", "n_ordinal", std::to_string(n.ordinal));
    if (g.level == Level::Keyword) {
      data("      ", "n_keyword", n.keyword);
      data("      ", "n_rank", std::to_string(n.rank));
    } else {
      data("      ", "n_keywords", join(n.keywords, ' '));
    }
    data("      ", "n_degenerate", n.degenerate ? "true" : "false");
    data("      ", "n_boundary", n.boundary ? "true" : "false");
    out << "    </node>\n";
  }
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    out << "    <edge id=\"e" << i << "\" source=\"n" << g.nodes[e.u].id << "\" target=\"n"
        << g.nodes[e.v].id << "\">\n";
    data("      ", "e_kind", to_string(e.kind));
    if (e.mediating_question) data("      ", "e_question", std::to_string(*e.mediating_question));
    if (e.lift) data("      ", "e_lift", "true");
    out << "    </edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

std::string export_dot(const ConceptNetwork& net, const Graph& g, const ExportOptions& options,
                       const Provenance& prov, ColorLookup& color) {
  std::ostringstream out;
  out << "graph " << (g.level == Level::Keyword ? "keyword_network" : "concept_network") << " {\n";
  out << "  graph [level=" << dot_quote(to_string(options.level))
      << ", include_maieutic=" << dot_quote(options.include_maieutic ? "true" : "false")
      << ", tool_version=" << dot_quote(prov.tool_version)
      << ", config_digest=" << dot_quote(prov.config_digest) << "];\n";
  out << "  node [style=filled];\n";
  for (const auto& n : g.nodes) {
    out << "  n" << n.id << " [label=" << dot_quote(node_label(n, g.level))
        << ", fillcolor=" << dot_quote(color(n.agent_id)) << ", agent_id=" << dot_quote(n.agent_id)
        << ", display_label=" << dot_quote(display_label(net, n.agent_id));
    if (n.boundary) out << ", peripheries=2";
    out << "];\n";
  }
  for (const auto& e : g.edges) {
    out << "  n" << g.nodes[e.u].id << " -- n" << g.nodes[e.v].id << " [kind=" << dot_quote(to_string(e.kind));
    if (e.kind == EdgeKind::Maieutic) {
      out << ", color=\"red\", style=\"bold\"";
      if (e.mediating_question) out << ", mediating_question=\"" << *e.mediating_question << "\"";
    } else {
      out << ", color=\"black\"";
    }
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

ojson provenance_json(const Provenance& p) {
  return {{"tool_version", p.tool_version}, {"config_digest", p.config_digest}};
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw LoadError("cannot write file: " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw LoadError("write failed: " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot read file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --- transcripts ---

std::string serialize_transcript(const Transcript& t) {
  ojson j;
  j["schema_version"] = t.schema_version;
  j["tool_version"] = t.tool_version;
  j["config_digest"] = t.config_digest;
  j["condition"] = to_string(t.condition);
  j["seed"] = t.seed;
  j["complete"] = t.complete;
  if (!t.abort_reason.empty()) j["abort_reason"] = t.abort_reason;
  auto& agents = j["agents"] = ojson::array();
  for (const auto& a : t.agents) {
    agents.push_back({{"agent_id", a.agent_id},
                      {"display_label", a.display_label},
                      {"color", a.color},
                      {"philosopher_id", a.philosopher_id}});
  }
  auto& turns = j["turns"] = ojson::array();
  for (const auto& turn : t.turns) {
    ojson o;
    o["index"] = turn.index;
    o["speaker"] = turn.speaker;
    o["kind"] = to_string(turn.kind);
    o["text"] = turn.text;
    if (turn.addressed_to) o["addressed_to"] = *turn.addressed_to;
    if (turn.triggered_by) o["triggered_by"] = *turn.triggered_by;
    if (turn.kind == TurnKind::Answer) {
      auto& r = o["retrieved"] = ojson::array();
      for (const auto& ref : turn.retrieved) r.push_back({{"chunk_id", ref.chunk_id}, {"probability", ref.probability}});
      o["keywords"] = turn.keywords;
    }
    if (turn.backend) o["backend"] = *turn.backend;
    if (turn.request_digest) o["request_digest"] = *turn.request_digest;
    turns.push_back(std::move(o));
  }
  return j.dump(2) + "\n";
}

Transcript parse_transcript(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("transcript is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("transcript must be a JSON object");
  Transcript t;
  t.schema_version = top_level<std::string>(doc, "schema_version");
  if (t.schema_version != kSchemaVersion) {
    throw ParseError("unsupported schema_version \"" + t.schema_version + "\"");
  }
  t.tool_version = top_level<std::string>(doc, "tool_version");
  t.config_digest = top_level<std::string>(doc, "config_digest");
  const auto condition = parse_condition(top_level<std::string>(doc, "condition"));
  if (!condition) throw ParseError("unknown condition");
  t.condition = *condition;
  t.seed = top_level<std::uint64_t>(doc, "seed");
  t.complete = top_level<bool>(doc, "complete");
  t.abort_reason = doc.value("abort_reason", std::string{});
  for (const auto& a : top_level<json>(doc, "agents")) {
    AgentInfo info;
    try {
      info.agent_id = a.at("agent_id").get<std::string>();
      info.display_label = a.at("display_label").get<std::string>();
      info.color = a.value("color", std::string{});
      info.philosopher_id = a.value("philosopher_id", std::string{});
    } catch (const json::exception&) {
      throw ParseError("malformed agent entry");
    }
    t.agents.push_back(std::move(info));
  }
  const auto turns = top_level<json>(doc, "turns");
  if (!turns.is_array()) throw ParseError("field 'turns' must be an array");
  for (std::size_t i = 0; i < turns.size(); ++i) {
    const json& o = turns[i];
    if (!o.is_object()) field_error(i, "turn", "not an object");
    Turn turn;
    turn.index = required<std::size_t>(o, "index", i);
    turn.speaker = required<std::string>(o, "speaker", i);
    const auto kind = parse_turn_kind(required<std::string>(o, "kind", i));
    if (!kind) field_error(i, "kind", "unknown value \"" + o["kind"].get<std::string>() + "\"");
    turn.kind = *kind;
    turn.text = required<std::string>(o, "text", i);
    if (o.contains("addressed_to")) turn.addressed_to = required<std::string>(o, "addressed_to", i);
    if (o.contains("triggered_by")) turn.triggered_by = required<std::size_t>(o, "triggered_by", i);
    if (o.contains("retrieved")) {
      for (const auto& r : required<json>(o, "retrieved", i)) {
        if (!r.is_object()) field_error(i, "retrieved", "entry not an object");
        RetrievedRef ref;
        ref.chunk_id = required<std::string>(r, "chunk_id", i);
        ref.probability = required<double>(r, "probability", i);
        turn.retrieved.push_back(std::move(ref));
      }
    }
    if (o.contains("keywords")) turn.keywords = required<std::vector<std::string>>(o, "keywords", i);
    if (o.contains("backend")) turn.backend = required<std::string>(o, "backend", i);
    if (o.contains("request_digest")) turn.request_digest = required<std::string>(o, "request_digest", i);
    t.turns.push_back(std::move(turn));
  }
  validate_transcript(t);
  return t;
}

void write_transcript(const Transcript& transcript, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_transcript(transcript));
}

Transcript read_transcript(const std::filesystem::path& path) { return parse_transcript(read_file(path)); }

// --- corpus / index ---

std::string serialize_corpus(const Corpus& corpus, const Provenance& provenance) {
  ojson j = provenance_json(provenance);
  j["philosopher_id"] = corpus.philosopher_id();
  j["display_label"] = corpus.display_label();
  auto& docs = j["documents"] = ojson::array();
  for (const auto& d : corpus.documents()) {
    docs.push_back({{"doc_id", d.doc_id}, {"title", d.title}, {"text", d.text}});
  }
  auto& chunks = j["chunks"] = ojson::array();
  for (const auto& c : corpus.chunks()) {
    chunks.push_back({{"chunk_id", c.chunk_id}, {"doc_ref", c.doc_ref}, {"span", {c.span.begin, c.span.end}}});
  }
  return j.dump(1) + "\n";
}

Corpus parse_corpus(std::string_view bytes) {
  try {
    const json j = json::parse(bytes);
    const auto philosopher = j.at("philosopher_id").get<std::string>();
    std::vector<Document> documents;
    for (const auto& d : j.at("documents")) {
      documents.push_back({d.at("doc_id").get<std::string>(), philosopher, d.at("title").get<std::string>(),
                           d.at("text").get<std::string>()});
    }
    std::unordered_map<std::string, const Document*> by_id;
    for (const auto& d : documents) by_id[d.doc_id] = &d;
    std::vector<Chunk> chunks;
    for (const auto& c : j.at("chunks")) {
      Chunk chunk;
      chunk.chunk_id = c.at("chunk_id").get<std::string>();
      chunk.doc_ref = c.at("doc_ref").get<std::string>();
      chunk.span = {c.at("span").at(0).get<std::size_t>(), c.at("span").at(1).get<std::size_t>()};
      auto it = by_id.find(chunk.doc_ref);
      if (it == by_id.end() || chunk.span.begin >= chunk.span.end || chunk.span.end > it->second->text.size()) {
        throw ParseError("corpus chunk " + chunk.chunk_id + " has an invalid reference");
      }
      chunk.text = it->second->text.substr(chunk.span.begin, chunk.span.end - chunk.span.begin);
      chunk.tokens = tokenize(chunk.text);
      chunks.push_back(std::move(chunk));
    }
    return Corpus(philosopher, j.value("display_label", default_display_label(philosopher)),
                  std::move(documents), std::move(chunks));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed corpus file: ") + e.what());
  }
}

std::string serialize_index(const RetrievalIndex& index, const Provenance& provenance) {
  ojson j = provenance_json(provenance);
  j["philosopher_id"] = index.philosopher_id();
  const auto& e = index.embedder();
  j["embedder"] = {{"name", e.name}, {"dimension", e.dimension}, {"mode", to_string(e.mode)}, {"fingerprint", e.fingerprint}};
  auto& entries = j["entries"] = ojson::array();
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto row = index.row(i);
    entries.push_back({{"chunk_id", index.chunk_ids()[i]}, {"vector", std::vector<double>(row.begin(), row.end())}});
  }
  return j.dump() + "\n";
}

RetrievalIndex parse_index(std::string_view bytes) {
  try {
    const json j = json::parse(bytes);
    const auto& e = j.at("embedder");
    EmbedderInfo info;
    info.name = e.at("name").get<std::string>();
    info.dimension = e.at("dimension").get<std::size_t>();
    info.mode = e.at("mode").get<std::string>() == "external-endpoint" ? EmbedderMode::ExternalEndpoint
                                                                      : EmbedderMode::DeterministicLexical;
    info.fingerprint = e.at("fingerprint").get<std::string>();
    std::vector<std::string> ids;
    std::vector<double> matrix;
    for (const auto& entry : j.at("entries")) {
      ids.push_back(entry.at("chunk_id").get<std::string>());
      const auto v = entry.at("vector").get<std::vector<double>>();
      if (v.size() != info.dimension) throw ParseError("index entry " + ids.back() + " has wrong dimension");
      matrix.insert(matrix.end(), v.begin(), v.end());
    }
    return RetrievalIndex(j.at("philosopher_id").get<std::string>(), info, std::move(ids), std::move(matrix));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed index file: ") + e.what());
  }
}

// --- graph export ---

std::optional<ExportFormat> parse_export_format(std::string_view s) {
  if (s == "graphml") return ExportFormat::GraphML;
  if (s == "dot") return ExportFormat::Dot;
  if (s == "json") return ExportFormat::Json;
  if (s == "csv") return ExportFormat::Csv;
  return std::nullopt;
}

std::map<std::string, std::string> default_color_map() {
  return {{"aristotle", "blue"}, {"nietzsche", "red"}, {"machiavelli", "green"}, {"sun-tzu", "yellow"}};
}

ExportResult export_graph(const ConceptNetwork& network, const ExportOptions& options,
                          const Provenance& provenance) {
  const Graph& full = network.view(options.level);
  const Graph graph = options.include_maieutic ? full : without_maieutic(full);
  ExportResult result;
  ColorLookup color{options.color_map, result.warnings, {}};
  switch (options.format) {
    case ExportFormat::GraphML:
      result.bytes = export_graphml(network, graph, options, provenance, color);
      break;
    case ExportFormat::Dot:
      result.bytes = export_dot(network, graph, options, provenance, color);
      break;
    default:
      throw ContractError("export_graph supports graphml and dot");
  }
  return result;
}

GraphDocument parse_graphml(std::string_view bytes) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in{std::string(bytes)};
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(std::string("invalid GraphML: ") + e.what());
  }
  const auto graphml = tree.get_child_optional("graphml");
  if (!graphml) throw ParseError("missing <graphml> root");
  const auto graph_el = graphml->get_child_optional("graph");
  if (!graph_el) throw ParseError("missing <graph> element");

  auto data_of = [](const pt::ptree& el) {
    std::map<std::string, std::string> out;
    for (const auto& [name, child] : el) {
      if (name == "data") out[child.get<std::string>("<xmlattr>.key")] = child.data();
    }
    return out;
  };
  auto to_size = [](const std::string& s) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) throw ParseError("bad integer in GraphML: '" + s + "'");
    return v;
  };
  auto get = [](const std::map<std::string, std::string>& m, const char* key) {
    auto it = m.find(key);
    return it == m.end() ? std::string{} : it->second;
  };

  GraphDocument doc;
  for (const auto& [key, value] : data_of(*graph_el)) doc.graph_attributes[key.substr(2)] = value;
  const auto level = parse_level(doc.graph_attributes["level"]);
  if (!level) throw ParseError("GraphML graph lacks a valid level");
  doc.graph.level = *level;

  std::map<std::string, std::size_t> position;
  for (const auto& [name, el] : *graph_el) {
    if (name != "node") continue;
    const auto xml_id = el.get<std::string>("<xmlattr>.id");
    if (xml_id.size() < 2 || xml_id[0] != 'n') throw ParseError("unexpected node id " + xml_id);
    const auto d = data_of(el);
    Node n;
    n.id = to_size(xml_id.substr(1));
    n.agent_id = get(d, "n_agent");
    n.chunk_index = to_size(get(d, "n_chunk"));
    n.ordinal = to_size(get(d, "n_ordinal"));
    if (doc.graph.level == Level::Keyword) {
      n.keyword = get(d, "n_keyword");
      n.rank = to_size(get(d, "n_rank"));
    } else {
      n.keywords = split(get(d, "n_keywords"), ' ');
    }
    n.degenerate = get(d, "n_degenerate") == "true";
    n.boundary = get(d, "n_boundary") == "true";
    position[xml_id] = doc.graph.nodes.size();
    doc.graph.nodes.push_back(std::move(n));
  }
  for (const auto& [name, el] : *graph_el) {
    if (name != "edge") continue;
    const auto src = position.find(el.get<std::string>("<xmlattr>.source"));
    const auto dst = position.find(el.get<std::string>("<xmlattr>.target"));
    if (src == position.end() || dst == position.end()) throw ParseError("GraphML edge references an unknown node");
    const auto d = data_of(el);
    const auto kind = parse_edge_kind(get(d, "e_kind"));
    if (!kind) throw ParseError("GraphML edge has an unknown kind");
    Edge e;
    e.u = src->second;
    e.v = dst->second;
    e.kind = *kind;
    if (const auto q = get(d, "e_question"); !q.empty()) e.mediating_question = to_size(q);
    e.lift = get(d, "e_lift") == "true";
    doc.graph.edges.push_back(e);
  }
  return doc;
}

// --- metrics ---

std::string curves_csv(const std::vector<CentralityCurve>& curves, const Provenance& provenance) {
  std::string out = "# tool_version=" + provenance.tool_version + " config_digest=" + provenance.config_digest + "\n";
  out += "level,include_maieutic,k,n,c_d,isolates\n";
  for (const auto& curve : curves) {
    for (const auto& p : curve.points) {
      out += std::string(to_string(curve.level)) + "," + (curve.include_maieutic ? "true" : "false") + "," +
             std::to_string(p.k) + "," + std::to_string(p.n) + "," + format_double(p.c_d) + "," +
             std::to_string(p.isolates) + "\n";
    }
  }
  return out;
}

ojson to_json(const CentralityReport& r) {
  ojson j;
  j["level"] = to_string(r.level);
  j["include_maieutic"] = r.include_maieutic;
  j["n"] = r.n;
  j["c_d"] = r.c_d;
  j["mean_raw_degree"] = r.mean_raw_degree;
  auto& nodes = j["per_node"] = ojson::array();
  for (const auto& [id, d] : r.per_node) nodes.push_back({{"id", id}, {"degree", d}});
  return j;
}

ojson to_json(const CentralityCurve& c) {
  ojson j;
  j["level"] = to_string(c.level);
  j["include_maieutic"] = c.include_maieutic;
  if (c.agent) j["agent"] = *c.agent;
  auto& points = j["points"] = ojson::array();
  for (const auto& p : c.points) points.push_back({{"k", p.k}, {"n", p.n}, {"c_d", p.c_d}, {"isolates", p.isolates}});
  return j;
}

ojson to_json(const ConditionDelta& d) {
  return {{"with_maieutic", d.with_maieutic}, {"without_maieutic", d.without_maieutic}, {"delta", d.delta}};
}

ojson to_json(const CoherenceReport& r) {
  return {{"mean_adjacent_cosine", r.mean_adjacent_cosine},
          {"pair_count", r.pair_count},
          {"degenerate_pairs", r.degenerate_pairs},
          {"pair_cosines", r.pair_cosines}};
}

}  // namespace epistemo
