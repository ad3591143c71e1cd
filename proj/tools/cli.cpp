#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "epistemo/conceptnet.hpp"
#include "epistemo/corpus.hpp"
#include "epistemo/dialogue.hpp"
#include "epistemo/digest.hpp"
#include "epistemo/errors.hpp"
#include "epistemo/generation.hpp"
#include "epistemo/io.hpp"
#include "epistemo/metrics.hpp"
#include "epistemo/retrieval.hpp"

namespace epistemo::cli {
namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

struct IngestArgs {
  std::string manifest;
  std::string out;
  std::size_t chunk_tokens = 180;
  std::size_t overlap = 0;
  std::size_t embed_dim = LexicalEmbedder::kDefaultDimension;
  std::string embedder = "lexical";
};

struct DebateArgs {
  std::string agents;
  std::string store = "store";
  std::string question;
  std::size_t max_turns = 0;
  std::string condition = "maieutic";
  std::size_t k = 3;
  std::uint64_t seed = 0;
  std::string backend = "extractive";
  bool ack_nondeterministic = false;
  std::string embedder = "lexical";
  std::size_t embed_dim = LexicalEmbedder::kDefaultDimension;
  std::size_t budget_tokens = 120;
  std::string out;
};

struct AnalyzeArgs {
  std::string transcript;
  std::string level = "concept";
  bool with_maieutic = false;
  bool without_maieutic = false;
  std::string agent;
  bool curve = false;
  bool coherence = false;
  bool no_lift = false;
  std::string out;
};

struct ExportArgs {
  std::string transcript;
  std::string format = "graphml";
  std::string level = "concept";
  bool without_maieutic = false;
  std::string agent;
  bool no_lift = false;
  std::string out;
};

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::unique_ptr<Embedder> make_embedder(const std::string& kind, std::size_t dim) {
  if (kind == "endpoint") {
    return std::make_unique<EndpointEmbedder>(EndpointConfig::from_env("EPISTEMO_EMBED_URL"), dim);
  }
  return std::make_unique<LexicalEmbedder>(dim);
}

void fit_if_lexical(Embedder& embedder, const std::vector<std::vector<std::string>>& docs) {
  if (auto* lexical = dynamic_cast<LexicalEmbedder*>(&embedder)) lexical->fit(docs);
}

fs::path corpus_file(const fs::path& store, const std::string& id) { return store / (id + ".corpus.json"); }
fs::path index_file(const fs::path& store, const std::string& id) { return store / (id + ".index.json"); }

int cmd_ingest(const IngestArgs& a, std::ostream& out, std::ostream& err) {
  SegmentOptions options{a.chunk_tokens, a.overlap};
  if (options.overlap_tokens >= options.target_tokens) throw ValidationError("--overlap must be < --chunk-tokens");
  const Corpus corpus = load_corpus(a.manifest, options);
  auto embedder = make_embedder(a.embedder, a.embed_dim);
  if (auto* lexical = dynamic_cast<LexicalEmbedder*>(embedder.get())) lexical->fit(corpus);
  const RetrievalIndex index = build_index(corpus, *embedder);

  ojson config = {{"manifest_sha256", sha256_hex(read_file(a.manifest))},
                  {"chunk_tokens", a.chunk_tokens},
                  {"overlap", a.overlap},
                  {"embedder", index.embedder().fingerprint}};
  const Provenance prov{std::string(tool_version()), sha256_hex(config.dump())};
  const fs::path dir = a.out;
  write_file_atomic(corpus_file(dir, corpus.philosopher_id()), serialize_corpus(corpus, prov));
  write_file_atomic(index_file(dir, corpus.philosopher_id()), serialize_index(index, prov));
  err << "[epistemo] ingested " << corpus.philosopher_id() << ": " << corpus.documents().size()
      << " documents, " << corpus.chunks().size() << " chunks\n";
  out << ojson{{"command", "ingest"},
               {"philosopher_id", corpus.philosopher_id()},
               {"documents", corpus.documents().size()},
               {"chunks", corpus.chunks().size()},
               {"corpus", corpus_file(dir, corpus.philosopher_id()).string()},
               {"index", index_file(dir, corpus.philosopher_id()).string()},
               {"config_digest", prov.config_digest}}
             .dump()
      << "\n";
  return kOk;
}

int cmd_debate(const DebateArgs& a, std::ostream& out, std::ostream& err) {
  const auto condition = parse_condition(a.condition);
  if (!condition) throw ValidationError("--condition must be maieutic or question-off");
  if (a.backend == "endpoint" && !a.ack_nondeterministic) {
    throw ValidationError("--backend endpoint needs --ack-nondeterministic");
  }
  const auto ids = split_csv(a.agents);
  if (ids.size() < 2) throw ValidationError("--agents needs at least two ids");

  std::vector<std::shared_ptr<const Corpus>> corpora;
  std::vector<std::vector<std::string>> docs;
  for (const auto& id : ids) {
    auto corpus = std::make_shared<const Corpus>(parse_corpus(read_file(corpus_file(a.store, id))));
    for (const auto& c : corpus->chunks()) docs.push_back(c.tokens);
    corpora.push_back(std::move(corpus));
  }
  auto embedder = make_embedder(a.embedder, a.embed_dim);
  fit_if_lexical(*embedder, docs);

  DebateConfig config;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    AgentProfile p;
    p.agent_id = ids[i];
    p.display_label = corpora[i]->display_label();
    p.color = default_color(ids[i]);
    p.corpus = corpora[i];
    p.index = std::make_shared<const RetrievalIndex>(build_index(*corpora[i], *embedder));
    config.agents.push_back(std::move(p));
  }
  config.initial_question = a.question;
  config.max_turns = a.max_turns;
  config.condition = *condition;
  config.k = a.k;
  config.seed = a.seed;
  config.budget_tokens = a.budget_tokens;
  validate(config);

  std::unique_ptr<Backend> backend;
  if (a.backend == "endpoint") backend = std::make_unique<EndpointBackend>(EndpointConfig::from_env("EPISTEMO_GEN_URL"));
  else backend = std::make_unique<ExtractiveBackend>();

  Transcript transcript;
  try {
    transcript = run_debate(config, *backend, *embedder);
  } catch (const DebateAborted& e) {
    write_transcript(e.partial(), a.out);
    err << "[epistemo] " << e.what() << "; partial transcript written to " << a.out << "\n";
    out << ojson{{"command", "debate"}, {"out", a.out}, {"complete", false}, {"turns", e.partial().turns.size()}}.dump()
        << "\n";
    return e.backend_failure() ? kBackend : kInternal;
  }
  write_transcript(transcript, a.out);
  const auto questions = std::count_if(transcript.turns.begin(), transcript.turns.end(),
                                       [](const Turn& t) { return t.kind == TurnKind::MachineQuestion; });
  err << "[epistemo] debate finished: " << transcript.turns.size() << " turns\n";
  out << ojson{{"command", "debate"},
               {"out", a.out},
               {"complete", true},
               {"turns", transcript.turns.size()},
               {"answers", transcript.answer_count()},
               {"machine_questions", questions},
               {"config_digest", transcript.config_digest}}
             .dump()
      << "\n";
  return kOk;
}

std::vector<bool> conditions(bool with, bool without) {
  if (with == without) return {true, false};
  return {with};
}

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  const auto level = parse_level(a.level);
  if (!level) throw ValidationError("--level must be keyword or concept");
  const Transcript transcript = replay(a.transcript);
  const ConceptNetwork full = build_network(transcript, {.maieutic_lift = !a.no_lift});
  std::optional<std::string> agent;
  if (!a.agent.empty()) agent = a.agent;
  const ConceptNetwork network = agent ? agent_subgraph(full, *agent, true) : full;
  const Graph& view = network.view(*level);
  const Provenance prov{std::string(tool_version()), transcript.config_digest};

  ojson report = {{"tool_version", prov.tool_version},
                  {"config_digest", prov.config_digest},
                  {"transcript", a.transcript},
                  {"level", to_string(*level)}};
  if (agent) report["agent"] = *agent;
  auto& conds = report["conditions"] = ojson::array();
  for (bool include : conditions(a.with_maieutic, a.without_maieutic)) {
    const Graph g = include ? view : without_maieutic(view);
    ojson c;
    c["include_maieutic"] = include;
    c["centrality"] = to_json(average_degree_centrality(g, include));
    c["isolates"] = isolate_count(g);
    c["components"] = connected_components(g).size();
    conds.push_back(std::move(c));
  }
  report["condition_delta"] = to_json(condition_delta(view));

  const fs::path dir = a.out;
  std::size_t rows = 0;
  if (a.curve) {
    std::vector<CentralityCurve> curves;
    for (bool include : conditions(a.with_maieutic, a.without_maieutic)) {
      curves.push_back(centrality_curve(full, *level, include, agent));
      rows += curves.back().points.size();
    }
    auto& arr = report["curves"] = ojson::array();
    for (const auto& c : curves) arr.push_back(to_json(c));
    write_file_atomic(dir / "curve.csv", curves_csv(curves, prov));
  }
  if (a.coherence) {
    LexicalEmbedder embedder;
    std::vector<std::vector<std::string>> docs;
    for (const auto& t : transcript.turns) {
      if (t.kind == TurnKind::Answer) docs.push_back(tokenize(t.text));
    }
    embedder.fit(docs);
    report["coherence"] = to_json(local_coherence(transcript, embedder));
  }
  write_file_atomic(dir / "metrics.json", report.dump(2) + "\n");
  err << "[epistemo] metrics written to " << dir.string() << "\n";

  ojson summary = {{"command", "analyze"}, {"out", dir.string()}, {"level", to_string(*level)}};
  for (const auto& c : conds) {
    summary[c["include_maieutic"].get<bool>() ? "c_d_with_maieutic" : "c_d_without_maieutic"] = c["centrality"]["c_d"];
  }
  if (a.curve) summary["curve_rows"] = rows;
  out << summary.dump() << "\n";
  return kOk;
}

int cmd_export(const ExportArgs& a, std::ostream& out, std::ostream& err) {
  const auto level = parse_level(a.level);
  if (!level) throw ValidationError("--level must be keyword or concept");
  const auto format = parse_export_format(a.format);
  if (!format || (*format != ExportFormat::GraphML && *format != ExportFormat::Dot)) {
    throw ValidationError("--format must be graphml or dot");
  }
  const Transcript transcript = replay(a.transcript);
  ConceptNetwork network = build_network(transcript, {.maieutic_lift = !a.no_lift});
  if (!a.agent.empty()) network = agent_subgraph(network, a.agent, !a.without_maieutic);

  ExportOptions options;
  options.format = *format;
  options.level = *level;
  options.include_maieutic = !a.without_maieutic;
  for (const auto& agent : transcript.agents) {
    if (!agent.color.empty() && agent.color != kNeutralColor) options.color_map.emplace(agent.agent_id, agent.color);
  }
  const auto result = export_graph(network, options, {std::string(tool_version()), transcript.config_digest});
  for (const auto& w : result.warnings) err << "[epistemo] warning: " << w << "\n";
  write_file_atomic(a.out, result.bytes);
  const Graph& g = network.view(*level);
  out << ojson{{"command", "export"},
               {"out", a.out},
               {"format", a.format},
               {"nodes", g.nodes.size()},
               {"warnings", result.warnings.size()}}
             .dump()
      << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-agent philosopher-clone debates and concept-network metrics", "epistemo"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Load a corpus manifest, chunk it and build its retrieval index");
  ingest_cmd->add_option("--manifest", ingest.manifest, "Corpus manifest (JSON)")->required();
  ingest_cmd->add_option("--out", ingest.out, "Output directory")->required();
  ingest_cmd->add_option("--chunk-tokens", ingest.chunk_tokens, "Target tokens per chunk")->check(CLI::PositiveNumber);
  ingest_cmd->add_option("--overlap", ingest.overlap, "Tokens shared by consecutive chunks");
  ingest_cmd->add_option("--embed-dim", ingest.embed_dim)->check(CLI::PositiveNumber);
  ingest_cmd->add_option("--embedder", ingest.embedder)->check(CLI::IsMember({"lexical", "endpoint"}));

  DebateArgs debate;
  auto* debate_cmd = app.add_subcommand("debate", "Run a seeded multi-agent debate");
  debate_cmd->add_option("--agents", debate.agents, "Comma-separated agent ids")->required();
  debate_cmd->add_option("--store", debate.store, "Directory written by ingest");
  debate_cmd->add_option("--question", debate.question, "Seed question")->required();
  debate_cmd->add_option("--max-turns", debate.max_turns, "Number of answer turns")->required()->check(CLI::PositiveNumber);
  debate_cmd->add_option("--condition", debate.condition)->check(CLI::IsMember({"maieutic", "question-off"}));
  debate_cmd->add_option("--k", debate.k, "Retrieval depth")->check(CLI::PositiveNumber);
  debate_cmd->add_option("--seed", debate.seed)->required();
  debate_cmd->add_option("--backend", debate.backend)->check(CLI::IsMember({"extractive", "endpoint"}));
  debate_cmd->add_flag("--ack-nondeterministic", debate.ack_nondeterministic);
  debate_cmd->add_option("--embedder", debate.embedder)->check(CLI::IsMember({"lexical", "endpoint"}));
  debate_cmd->add_option("--embed-dim", debate.embed_dim)->check(CLI::PositiveNumber);
  debate_cmd->add_option("--budget-tokens", debate.budget_tokens);
  debate_cmd->add_option("--out", debate.out, "Transcript path")->required();

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Compute concept-network metrics for a transcript");
  analyze_cmd->add_option("--transcript", analyze.transcript)->required();
  analyze_cmd->add_option("--level", analyze.level)->check(CLI::IsMember({"keyword", "concept"}));
  auto* with_flag = analyze_cmd->add_flag("--with-maieutic", analyze.with_maieutic);
  analyze_cmd->add_flag("--without-maieutic", analyze.without_maieutic)->excludes(with_flag);
  analyze_cmd->add_option("--agent", analyze.agent, "Restrict to one agent's concepts");
  analyze_cmd->add_flag("--curve", analyze.curve, "Centrality as a function of answer chunks");
  analyze_cmd->add_flag("--coherence", analyze.coherence, "Mean cosine of adjacent answers");
  analyze_cmd->add_flag("--no-lift", analyze.no_lift, "Do not project maieutic edges to keyword level");
  analyze_cmd->add_option("--out", analyze.out, "Output directory")->required();

  ExportArgs exp;
  auto* export_cmd = app.add_subcommand("export", "Write the concept network as GraphML or DOT");
  export_cmd->add_option("--transcript", exp.transcript)->required();
  export_cmd->add_option("--format", exp.format)->check(CLI::IsMember({"graphml", "dot"}));
  export_cmd->add_option("--level", exp.level)->check(CLI::IsMember({"keyword", "concept"}));
  auto* exp_with = export_cmd->add_flag("--with-maieutic", "Keep maieutic edges (default)");
  export_cmd->add_flag("--without-maieutic", exp.without_maieutic)->excludes(exp_with);
  export_cmd->add_option("--agent", exp.agent);
  export_cmd->add_flag("--no-lift", exp.no_lift);
  export_cmd->add_option("--out", exp.out)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*ingest_cmd) return cmd_ingest(ingest, out, err);
    if (*debate_cmd) return cmd_debate(debate, out, err);
    if (*analyze_cmd) return cmd_analyze(analyze, out, err);
    if (*export_cmd) return cmd_export(exp, out, err);
  } catch (const LoadError& e) {
    err << "[epistemo] error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "[epistemo] error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "[epistemo] error: " << e.what() << "\n";
    return kUsage;
  } catch (const TransportError& e) {
    err << "[epistemo] transport error (HTTP " << e.status() << "): " << e.what() << "\n";
    return kBackend;
  } catch (const GenerationError& e) {
    err << "[epistemo] backend error: " << e.what() << "\n";
    return kBackend;
  } catch (const IndexBuildError& e) {
    err << "[epistemo] index build failed at " << e.chunk_id() << ": " << e.what() << "\n";
    return kBackend;
  } catch (const ContractError& e) {
    err << "[epistemo] error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "[epistemo] internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace epistemo::cli
