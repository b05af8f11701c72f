#include "planted/graph.hpp"

#include "planted/errors.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace planted {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kMalformedLine:
      return "malformed line";
    case ParseErrorKind::kMissingVertexCount:
      return "missing vertex count";
    case ParseErrorKind::kSelfLoop:
      return "self-loop";
    case ParseErrorKind::kDuplicateEdge:
      return "duplicate edge";
    case ParseErrorKind::kEndpointOutOfRange:
      return "endpoint out of range";
  }
  return "unknown";
}

Graph::Graph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
  for (auto& [u, v] : edges_) {
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw std::invalid_argument("duplicate edge");
  }
  words_ = (static_cast<std::size_t>(vertex_count) + 63) / 64;
  adjacency_.assign(words_ * static_cast<std::size_t>(vertex_count), 0);
  degrees_.assign(static_cast<std::size_t>(vertex_count), 0);
  for (const auto& [u, v] : edges_) {
    adjacency_[static_cast<std::size_t>(u) * words_ + (static_cast<std::size_t>(v) >> 6)] |=
        std::uint64_t{1} << (v & 63);
    adjacency_[static_cast<std::size_t>(v) * words_ + (static_cast<std::size_t>(u) >> 6)] |=
        std::uint64_t{1} << (u & 63);
    ++degrees_[static_cast<std::size_t>(u)];
    ++degrees_[static_cast<std::size_t>(v)];
  }
}

int Graph::support_size() const {
  return static_cast<int>(std::count_if(degrees_.begin(), degrees_.end(),
                                        [](int d) { return d > 0; }));
}

Graph Graph::relabeled(std::span<const int> perm) const {
  std::vector<Edge> mapped;
  mapped.reserve(edges_.size());
  for (const auto& [u, v] : edges_) {
    mapped.emplace_back(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
  }
  return Graph(vertex_count_, std::move(mapped));
}

Graph Graph::edge_subgraph(std::span<const int> edge_indices) const {
  std::vector<int> rename(static_cast<std::size_t>(vertex_count_), -1);
  for (int idx : edge_indices) {
    const auto& [u, v] = edges_[static_cast<std::size_t>(idx)];
    rename[static_cast<std::size_t>(u)] = 0;
    rename[static_cast<std::size_t>(v)] = 0;
  }
  int next = 0;
  for (auto& r : rename) {
    if (r == 0) r = next++;
  }
  std::vector<Edge> sub;
  sub.reserve(edge_indices.size());
  for (int idx : edge_indices) {
    const auto& [u, v] = edges_[static_cast<std::size_t>(idx)];
    sub.emplace_back(rename[static_cast<std::size_t>(u)], rename[static_cast<std::size_t>(v)]);
  }
  return Graph(next, std::move(sub));
}

Graph Graph::induced(std::uint64_t vertex_mask) const {
  if (vertex_count_ > 64) throw std::invalid_argument("induced(): more than 64 vertices");
  std::vector<int> rename(static_cast<std::size_t>(vertex_count_), -1);
  int next = 0;
  for (int v = 0; v < vertex_count_; ++v) {
    if ((vertex_mask >> v) & 1U) rename[static_cast<std::size_t>(v)] = next++;
  }
  std::vector<Edge> sub;
  for (const auto& [u, v] : edges_) {
    if (((vertex_mask >> u) & 1U) && ((vertex_mask >> v) & 1U)) {
      sub.emplace_back(rename[static_cast<std::size_t>(u)], rename[static_cast<std::size_t>(v)]);
    }
  }
  return Graph(next, std::move(sub));
}

int Graph::induced_edge_count(std::uint64_t vertex_mask) const {
  int twice = 0;
  for (std::uint64_t rest = vertex_mask; rest != 0; rest &= rest - 1) {
    const int v = std::countr_zero(rest);
    twice += std::popcount(adjacency_[static_cast<std::size_t>(v) * words_] & vertex_mask);
  }
  return twice / 2;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

bool parse_int(std::string_view token, long long& out) {
  auto res = std::from_chars(token.data(), token.data() + token.size(), out);
  return res.ec == std::errc() && res.ptr == token.data() + token.size();
}

}  // namespace

Graph parse_graph(std::string_view text) {
  std::optional<long long> declared;
  bool header_seen = false;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  long long max_index = -1;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      if (tokens.size() == 1) {
        long long n = 0;
        if (!parse_int(tokens[0], n) || n < 0) {
          throw ParseError(ParseErrorKind::kMissingVertexCount, line_no, std::string(line));
        }
        declared = n;
        if (end == text.size()) break;
        continue;
      }
    }
    long long u = 0;
    long long v = 0;
    if (tokens.size() != 2 || !parse_int(tokens[0], u) || !parse_int(tokens[1], v) || u < 0 ||
        v < 0) {
      throw ParseError(ParseErrorKind::kMalformedLine, line_no, std::string(line));
    }
    if (u == v) throw ParseError(ParseErrorKind::kSelfLoop, line_no, std::string(line));
    if (declared && (u >= *declared || v >= *declared)) {
      throw ParseError(ParseErrorKind::kEndpointOutOfRange, line_no, std::string(line));
    }
    if (u > v) std::swap(u, v);
    Edge e{static_cast<Vertex>(u), static_cast<Vertex>(v)};
    if (!seen.insert(e).second) {
      throw ParseError(ParseErrorKind::kDuplicateEdge, line_no, std::string(line));
    }
    edges.push_back(e);
    max_index = std::max(max_index, v);
    if (end == text.size()) break;
  }
  const long long n = declared ? *declared : max_index + 1;
  return Graph(static_cast<int>(n), std::move(edges));
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges = a.edges();
  for (const auto& [u, v] : b.edges()) {
    edges.emplace_back(u + a.vertex_count(), v + a.vertex_count());
  }
  return Graph(a.vertex_count() + b.vertex_count(), std::move(edges));
}

namespace families {

namespace {
void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}
}  // namespace

Graph clique(int k) {
  require(k >= 1, "clique size must be positive");
  std::vector<Edge> edges;
  for (int u = 0; u < k; ++u) {
    for (int v = u + 1; v < k; ++v) edges.emplace_back(u, v);
  }
  return Graph(k, std::move(edges));
}

Graph cycle(int k) {
  require(k >= 3, "cycle length must be at least 3");
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i) edges.emplace_back(i, (i + 1) % k);
  return Graph(k, std::move(edges));
}

Graph path(int k) {
  require(k >= 2, "path needs at least 2 vertices");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < k; ++i) edges.emplace_back(i, i + 1);
  return Graph(k, std::move(edges));
}

Graph perfect_matching(int n) {
  require(n >= 2 && n % 2 == 0, "perfect matching needs a positive even vertex count");
  std::vector<Edge> edges;
  for (int i = 0; i < n; i += 2) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

Graph sun(int k) {
  require(k >= 2, "sun needs k >= 2");
  std::vector<Edge> edges = clique(k).edges();
  for (int i = 0; i < k; ++i) edges.emplace_back(i, k + i);
  return Graph(2 * k, std::move(edges));
}

Graph disjoint_cliques(std::span<const int> sizes) {
  require(!sizes.empty(), "disjoint_cliques needs at least one size");
  Graph g(0, {});
  for (int s : sizes) {
    require(s >= 2, "clique sizes must be at least 2");
    g = disjoint_union(g, clique(s));
  }
  return g;
}

Graph cycle_with_out_edges(int k) {
  require(k >= 3, "cycle length must be at least 3");
  std::vector<Edge> edges = cycle(k).edges();
  for (int i = 0; i < k; ++i) edges.emplace_back(i, k + i);
  return Graph(2 * k, std::move(edges));
}

}  // namespace families

Graph generate(std::string_view family, const FamilyParams& params) {
  auto need = [&](const std::optional<int>& value, const char* name) {
    if (!value) {
      throw std::invalid_argument(std::string(family) + " requires --" + name);
    }
    return *value;
  };
  if (family == "clique") return families::clique(need(params.k, "k"));
  if (family == "cycle") return families::cycle(need(params.k, "k"));
  if (family == "path") return families::path(need(params.k, "k"));
  if (family == "edge") return families::clique(2);
  if (family == "matching" || family == "perfect_matching") {
    return families::perfect_matching(need(params.n, "n"));
  }
  if (family == "sun") return families::sun(need(params.k, "k"));
  if (family == "disjoint_cliques") return families::disjoint_cliques(params.sizes);
  if (family == "cycle_out" || family == "cycle_with_out_edges") {
    return families::cycle_with_out_edges(need(params.k, "k"));
  }
  throw std::invalid_argument("unknown family: " + std::string(family));
}

}  // namespace planted
