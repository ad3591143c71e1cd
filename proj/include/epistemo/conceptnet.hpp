#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epistemo/dialogue.hpp"
#include "epistemo/text.hpp"

namespace epistemo {

inline constexpr std::size_t kKeywordsPerChunk = 5;

/// Ranks non-stopword tokens by frequency (desc) then first occurrence and keeps
/// the top five; short texts are padded with "_pad1".."_padN".
/// Throws ValidationError on text without any token.
std::vector<std::string> extract_keywords(std::string_view text, const StopList& stoplist);

bool is_pad_keyword(std::string_view keyword);

enum class Level { Keyword, Concept };
enum class EdgeKind { IntraChunk, Lexical, Maieutic };

std::string_view to_string(Level level);
std::string_view to_string(EdgeKind kind);
std::optional<Level> parse_level(std::string_view s);
std::optional<EdgeKind> parse_edge_kind(std::string_view s);

struct Node {
  std::size_t id = 0;           // stable across views and subgraphs
  std::string agent_id;
  std::size_t chunk_index = 0;  // transcript turn index of the answer
  std::size_t ordinal = 0;      // 0-based position among answer turns
  std::string keyword;          // keyword level only
  std::size_t rank = 0;         // keyword level: 0 = top keyword
  std::vector<std::string> keywords;  // concept level only
  bool degenerate = false;      // padded keyword, or concept with padding
  bool boundary = false;        // foreign endpoint pulled in by a maieutic edge
  bool operator==(const Node&) const = default;
};

/// Undirected. u and v are positions in Graph::nodes.
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  EdgeKind kind = EdgeKind::IntraChunk;
  std::optional<std::size_t> mediating_question;  // maieutic only
  bool lift = false;  // keyword-level projection of a concept maieutic edge
  bool operator==(const Edge&) const = default;
};

struct Graph {
  Level level = Level::Concept;
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  bool operator==(const Graph&) const = default;
};

struct ConceptNetwork {
  Graph keyword_view;
  Graph concept_view;
  std::vector<AgentInfo> agents;
  std::size_t answer_count = 0;
  std::optional<std::string> agent_filter;

  const Graph& view(Level level) const {
    return level == Level::Keyword ? keyword_view : concept_view;
  }
  const AgentInfo* find_agent(std::string_view agent_id) const;
};

struct BuildOptions {
  /// Project each concept maieutic edge onto the two chunks' top keywords.
  bool maieutic_lift = true;
};

/// Throws ValidationError when an answer turn lacks its five keywords.
ConceptNetwork build_network(const Transcript& transcript, BuildOptions options = {});

/// Induced network over the first `answer_chunks` answers.
ConceptNetwork prefix_network(const ConceptNetwork& network, std::size_t answer_chunks);

/// Throws ValidationError for an agent not listed in the network.
ConceptNetwork agent_subgraph(const ConceptNetwork& network, const std::string& agent_id,
                              bool include_maieutic);

/// Same nodes, maieutic (and lift) edges removed.
Graph without_maieutic(const Graph& graph);

/// Components as sorted Node::id lists, ordered by their smallest id.
std::vector<std::vector<std::size_t>> connected_components(const Graph& graph);

}  // namespace epistemo
