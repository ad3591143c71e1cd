#include "epistemo/conceptnet.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "epistemo/errors.hpp"
#include "epistemo/kernels.hpp"

namespace epistemo {
namespace {

void add_edge(Graph& g, std::size_t a, std::size_t b, EdgeKind kind,
              std::optional<std::size_t> question = std::nullopt, bool lift = false) {
  g.edges.push_back({std::min(a, b), std::max(a, b), kind, question, lift});
}

void sort_edges(Graph& g) {
  std::sort(g.edges.begin(), g.edges.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.u, x.v, x.kind) < std::tie(y.u, y.v, y.kind);
  });
}

// Keeps nodes where keep[pos] or boundary[pos]; edges are kept by `edge_ok`.
template <class EdgePredicate>
Graph select(const Graph& g, const std::vector<char>& keep, const std::vector<char>& boundary,
             EdgePredicate edge_ok) {
  Graph out;
  out.level = g.level;
  std::vector<std::size_t> remap(g.nodes.size(), SIZE_MAX);
  for (std::size_t p = 0; p < g.nodes.size(); ++p) {
    if (!keep[p] && !boundary[p]) continue;
    remap[p] = out.nodes.size();
    Node n = g.nodes[p];
    n.boundary = n.boundary || (!keep[p] && boundary[p]);
    out.nodes.push_back(std::move(n));
  }
  for (const auto& e : g.edges) {
    if (remap[e.u] == SIZE_MAX || remap[e.v] == SIZE_MAX || !edge_ok(e)) continue;
    Edge copy = e;
    copy.u = remap[e.u];
    copy.v = remap[e.v];
    out.edges.push_back(copy);
  }
  return out;
}

Graph prefix_view(const Graph& g, std::size_t answer_chunks) {
  std::vector<char> keep(g.nodes.size()), none(g.nodes.size(), 0);
  for (std::size_t p = 0; p < g.nodes.size(); ++p) keep[p] = g.nodes[p].ordinal < answer_chunks;
  return select(g, keep, none, [](const Edge&) { return true; });
}

Graph agent_view(const Graph& g, const std::string& agent, bool include_maieutic) {
  std::vector<char> own(g.nodes.size()), boundary(g.nodes.size(), 0);
  for (std::size_t p = 0; p < g.nodes.size(); ++p) own[p] = g.nodes[p].agent_id == agent && !g.nodes[p].boundary;
  if (include_maieutic) {
    for (const auto& e : g.edges) {
      if (e.kind != EdgeKind::Maieutic) continue;
      if (own[e.u] && !own[e.v]) boundary[e.v] = 1;
      if (own[e.v] && !own[e.u]) boundary[e.u] = 1;
    }
  }
  return select(g, own, boundary, [&](const Edge& e) {
    if (e.kind == EdgeKind::Maieutic) return include_maieutic && (own[e.u] || own[e.v]);
    return own[e.u] && own[e.v];
  });
}

}  // namespace

bool is_pad_keyword(std::string_view keyword) { return keyword.starts_with("_pad"); }

std::vector<std::string> extract_keywords(std::string_view text, const StopList& stoplist) {
  const auto tokens = tokenize(text);
  if (tokens.empty()) throw ValidationError("cannot extract keywords from empty text");
  const auto content = filter_stopwords(tokens, stoplist);

  struct Stat {
    std::size_t count = 0;
    std::size_t first = 0;
  };
  std::unordered_map<std::string, Stat> stats;
  std::vector<std::string> distinct;
  for (std::size_t i = 0; i < content.size(); ++i) {
    auto [it, inserted] = stats.try_emplace(content[i], Stat{0, i});
    if (inserted) distinct.push_back(content[i]);
    ++it->second.count;
  }
  std::sort(distinct.begin(), distinct.end(), [&](const std::string& a, const std::string& b) {
    const auto& sa = stats[a];
    const auto& sb = stats[b];
    return sa.count != sb.count ? sa.count > sb.count : sa.first < sb.first;
  });
  if (distinct.size() > kKeywordsPerChunk) distinct.resize(kKeywordsPerChunk);
  for (std::size_t pad = 1; distinct.size() < kKeywordsPerChunk; ++pad) {
    distinct.push_back("_pad" + std::to_string(pad));
  }
  return distinct;
}

std::string_view to_string(Level level) { return level == Level::Keyword ? "keyword" : "concept"; }

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::IntraChunk: return "intra-chunk";
    case EdgeKind::Lexical: return "lexical";
    case EdgeKind::Maieutic: return "maieutic";
  }
  return "lexical";
}

std::optional<Level> parse_level(std::string_view s) {
  if (s == "keyword") return Level::Keyword;
  if (s == "concept") return Level::Concept;
  return std::nullopt;
}

std::optional<EdgeKind> parse_edge_kind(std::string_view s) {
  if (s == "intra-chunk") return EdgeKind::IntraChunk;
  if (s == "lexical") return EdgeKind::Lexical;
  if (s == "maieutic") return EdgeKind::Maieutic;
  return std::nullopt;
}

const AgentInfo* ConceptNetwork::find_agent(std::string_view agent_id) const {
  for (const auto& a : agents) {
    if (a.agent_id == agent_id) return &a;
  }
  return nullptr;
}

ConceptNetwork build_network(const Transcript& transcript, BuildOptions options) {
  ConceptNetwork net;
  net.agents = transcript.agents;
  net.keyword_view.level = Level::Keyword;
  net.concept_view.level = Level::Concept;

  std::unordered_map<std::size_t, std::size_t> ordinal_of_turn;
  std::vector<std::vector<std::string>> keyword_sets;  // sorted, padding removed
  for (const Turn& turn : transcript.turns) {
    if (turn.kind != TurnKind::Answer) continue;
    if (turn.keywords.size() != kKeywordsPerChunk) {
      throw ValidationError("answer turn " + std::to_string(turn.index) + " lacks its 5 keywords");
    }
    std::vector<std::string> sorted = turn.keywords;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ValidationError("answer turn " + std::to_string(turn.index) + " repeats a keyword");
    }
    const std::size_t ordinal = keyword_sets.size();
    ordinal_of_turn[turn.index] = ordinal;

    Node concept_node;
    concept_node.id = ordinal;
    concept_node.agent_id = turn.speaker;
    concept_node.chunk_index = turn.index;
    concept_node.ordinal = ordinal;
    concept_node.keywords = turn.keywords;
    concept_node.degenerate = std::any_of(turn.keywords.begin(), turn.keywords.end(),
                                     [](const std::string& k) { return is_pad_keyword(k); });
    net.concept_view.nodes.push_back(concept_node);

    const std::size_t base = ordinal * kKeywordsPerChunk;
    for (std::size_t r = 0; r < kKeywordsPerChunk; ++r) {
      Node k;
      k.id = base + r;
      k.agent_id = turn.speaker;
      k.chunk_index = turn.index;
      k.ordinal = ordinal;
      k.keyword = turn.keywords[r];
      k.rank = r;
      k.degenerate = is_pad_keyword(k.keyword);
      net.keyword_view.nodes.push_back(std::move(k));
    }
    for (std::size_t a = 0; a < kKeywordsPerChunk; ++a) {
      for (std::size_t b = a + 1; b < kKeywordsPerChunk; ++b) {
        add_edge(net.keyword_view, base + a, base + b, EdgeKind::IntraChunk);
      }
    }
    std::erase_if(sorted, [](const std::string& k) { return is_pad_keyword(k); });
    keyword_sets.push_back(std::move(sorted));
  }
  net.answer_count = keyword_sets.size();

  // Keyword level: every pair of equal keywords from different chunks.
  std::map<std::string, std::vector<std::size_t>> occurrences;
  for (const auto& n : net.keyword_view.nodes) {
    if (!n.degenerate) occurrences[n.keyword].push_back(n.id);
  }
  for (const auto& [word, nodes] : occurrences) {
    for (std::size_t a = 0; a < nodes.size(); ++a) {
      for (std::size_t b = a + 1; b < nodes.size(); ++b) add_edge(net.keyword_view, nodes[a], nodes[b], EdgeKind::Lexical);
    }
  }

  for (const auto& [a, b] : kernels::shared_keyword_pairs(keyword_sets)) {
    add_edge(net.concept_view, a, b, EdgeKind::Lexical);
  }

  // Maieutic: answer B replies to a machine question triggered by answer A.
  for (const Turn& turn : transcript.turns) {
    if (turn.kind != TurnKind::Answer || !turn.triggered_by) continue;
    const Turn& question = transcript.turns.at(*turn.triggered_by);
    if (question.kind != TurnKind::MachineQuestion || !question.triggered_by) continue;
    auto source = ordinal_of_turn.find(*question.triggered_by);
    if (source == ordinal_of_turn.end()) continue;
    const std::size_t a = source->second;
    const std::size_t b = ordinal_of_turn.at(turn.index);
    add_edge(net.concept_view, a, b, EdgeKind::Maieutic, question.index);
    if (options.maieutic_lift) {
      add_edge(net.keyword_view, a * kKeywordsPerChunk, b * kKeywordsPerChunk, EdgeKind::Maieutic,
               question.index, true);
    }
  }
  sort_edges(net.keyword_view);
  sort_edges(net.concept_view);
  return net;
}

ConceptNetwork prefix_network(const ConceptNetwork& network, std::size_t answer_chunks) {
  ConceptNetwork out;
  out.agents = network.agents;
  out.agent_filter = network.agent_filter;
  out.answer_count = std::min(answer_chunks, network.answer_count);
  out.keyword_view = prefix_view(network.keyword_view, answer_chunks);
  out.concept_view = prefix_view(network.concept_view, answer_chunks);
  return out;
}

ConceptNetwork agent_subgraph(const ConceptNetwork& network, const std::string& agent_id,
                              bool include_maieutic) {
  if (network.find_agent(agent_id) == nullptr) throw ValidationError("unknown agent: " + agent_id);
  ConceptNetwork out;
  out.agents = network.agents;
  out.agent_filter = agent_id;
  out.answer_count = network.answer_count;
  out.keyword_view = agent_view(network.keyword_view, agent_id, include_maieutic);
  out.concept_view = agent_view(network.concept_view, agent_id, include_maieutic);
  return out;
}

Graph without_maieutic(const Graph& graph) {
  Graph out;
  out.level = graph.level;
  out.nodes = graph.nodes;
  std::copy_if(graph.edges.begin(), graph.edges.end(), std::back_inserter(out.edges),
               [](const Edge& e) { return e.kind != EdgeKind::Maieutic; });
  return out;
}

std::vector<std::vector<std::size_t>> connected_components(const Graph& graph) {
  const std::size_t n = graph.nodes.size();
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (const auto& e : graph.edges) {
    adjacency[e.u].push_back(e.v);
    adjacency[e.v].push_back(e.u);
  }
  std::vector<char> seen(n, 0);
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp;
    stack.push_back(s);
    seen[s] = 1;
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      comp.push_back(graph.nodes[p].id);
      for (std::size_t q : adjacency[p]) {
        if (!seen[q]) {
          seen[q] = 1;
          stack.push_back(q);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

}  // namespace epistemo
