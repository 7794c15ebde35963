#include "mwc/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace mwc {

namespace {

std::uint64_t pair_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

}  // namespace

WeightedGraph WeightedGraph::build(int n, bool directed, std::vector<Edge> edge_list,
                                   bool allow_zero_weight) {
  if (n < 0) throw std::invalid_argument("graph: negative node count");
  WeightedGraph g;
  g.n = n;
  g.directed = directed;
  g.adj.assign(n, {});
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edge_list.size() * 2);
  const std::int64_t min_w = allow_zero_weight ? 0 : 1;
  for (std::size_t i = 0; i < edge_list.size(); ++i) {
    const Edge& e = edge_list[i];
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw std::invalid_argument("graph: edge endpoint out of range at edge " + std::to_string(i));
    if (e.u == e.v)
      throw std::invalid_argument("graph: self-loop at edge " + std::to_string(i));
    if (e.w < min_w)
      throw std::invalid_argument("graph: weight below " + std::to_string(min_w) + " on edge (" +
                                  std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    int a = e.u, b = e.v;
    if (!directed && a > b) std::swap(a, b);
    if (!seen.insert(pair_key(a, b)).second)
      throw std::invalid_argument("graph: parallel edge (" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + ")");
    int id = static_cast<int>(g.edges.size());
    g.edges.push_back(e);
    g.adj[e.u].emplace_back(e.v, id);
    if (!directed) g.adj[e.v].emplace_back(e.u, id);
    g.max_weight = std::max(g.max_weight, e.w);
  }
  return g;
}

int WeightedGraph::edge_between(int u, int v) const {
  for (auto [nb, id] : adj[u])
    if (nb == v) return id;
  return -1;
}

PathRecord make_path(const WeightedGraph& g, std::vector<int> nodes) {
  if (nodes.empty()) throw std::invalid_argument("make_path: empty node list");
  PathRecord p;
  p.hops = static_cast<int>(nodes.size()) - 1;
  for (int i = 0; i < p.hops; ++i) {
    int e = g.edge_between(nodes[i], nodes[i + 1]);
    if (e < 0) throw std::invalid_argument("make_path: missing edge in path");
    p.weight += g.edges[e].w;
  }
  p.nodes = std::move(nodes);
  return p;
}

WeightedGraph load_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw std::runtime_error("parse error: empty document");
  std::istringstream header(line);
  long long n = 0, m = 0;
  std::string kind;
  if (!(header >> n >> m >> kind))
    throw std::runtime_error("parse error at line " + std::to_string(lineno) + ": bad header");
  bool directed;
  if (kind == "directed") directed = true;
  else if (kind == "undirected") directed = false;
  else
    throw std::runtime_error("parse error at line " + std::to_string(lineno) +
                             ": expected directed|undirected");
  if (n < 0 || m < 0)
    throw std::runtime_error("parse error at line " + std::to_string(lineno) + ": negative counts");

  std::vector<Edge> edges;
  edges.reserve(m);
  for (long long i = 0; i < m; ++i) {
    if (!next_line())
      throw std::runtime_error("parse error: header announces " + std::to_string(m) +
                               " edges, body ends after " + std::to_string(i));
    std::istringstream row(line);
    long long u, v, w;
    if (!(row >> u >> v >> w))
      throw std::runtime_error("parse error at line " + std::to_string(lineno) + ": expected 'u v w'");
    std::string rest;
    if (row >> rest)
      throw std::runtime_error("parse error at line " + std::to_string(lineno) + ": trailing tokens");
    if (w <= 0)
      throw std::runtime_error("invariant violation at line " + std::to_string(lineno) +
                               ": weight must be positive");
    edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
  }
  if (next_line())
    throw std::runtime_error("parse error at line " + std::to_string(lineno) +
                             ": more rows than the header announces");
  try {
    return WeightedGraph::build(static_cast<int>(n), directed, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invariant violation: ") + e.what());
  }
}

std::string to_edge_list_text(const WeightedGraph& g) {
  std::ostringstream out;
  out << g.n << ' ' << g.edges.size() << ' ' << (g.directed ? "directed" : "undirected") << '\n';
  for (const Edge& e : g.edges) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
  return out.str();
}

namespace {

ShortestPaths dijkstra_impl(const WeightedGraph& g,
                            std::span<const std::pair<int, std::int64_t>> seeds,
                            std::span<const std::int64_t> lengths) {
  ShortestPaths r;
  r.dist.assign(g.n, kInfDist);
  r.parent.assign(g.n, -1);
  r.parent_edge.assign(g.n, -1);
  using Item = std::pair<std::int64_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (auto [node, off] : seeds) {
    if (node < 0 || node >= g.n) throw std::invalid_argument("dijkstra: seed out of range");
    if (off < 0) throw std::invalid_argument("dijkstra: negative offset");
    if (off < r.dist[node]) {
      r.dist[node] = off;
      pq.emplace(off, node);
    }
  }
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != r.dist[u]) continue;
    for (auto [v, e] : g.adj[u]) {
      std::int64_t len = lengths.empty() ? g.edges[e].w : lengths[e];
      std::int64_t nd = d + len;
      if (nd < r.dist[v]) {
        r.dist[v] = nd;
        r.parent[v] = u;
        r.parent_edge[v] = e;
        pq.emplace(nd, v);
      }
    }
  }
  return r;
}

}  // namespace

ShortestPaths dijkstra(const WeightedGraph& g, int source) {
  std::pair<int, std::int64_t> seed{source, 0};
  return dijkstra_impl(g, std::span(&seed, 1), {});
}

ShortestPaths dijkstra(const WeightedGraph& g,
                       std::span<const std::pair<int, std::int64_t>> seeds) {
  return dijkstra_impl(g, seeds, {});
}

std::vector<Rational> dijkstra_rational(
    const WeightedGraph& g, std::span<const std::pair<int, Rational>> seeds) {
  std::int64_t den = 1;
  for (const auto& [node, off] : seeds) {
    (void)node;
    if (off < Rational(0)) throw std::invalid_argument("dijkstra: negative offset");
    den = std::lcm(den, off.den());
  }
  std::vector<std::int64_t> lengths(g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) lengths[i] = g.edges[i].w * den;
  std::vector<std::pair<int, std::int64_t>> int_seeds;
  int_seeds.reserve(seeds.size());
  for (const auto& [node, off] : seeds)
    int_seeds.emplace_back(node, off.num() * (den / off.den()));
  ShortestPaths sp = dijkstra_impl(g, int_seeds, lengths);
  std::vector<Rational> out(g.n, Rational(0));
  for (int v = 0; v < g.n; ++v)
    out[v] = sp.dist[v] == kInfDist ? Rational(kInfDist) : Rational(sp.dist[v], den);
  return out;
}

ShortestPaths dijkstra_lengths(const WeightedGraph& g, int source,
                               std::span<const std::int64_t> lengths) {
  std::pair<int, std::int64_t> seed{source, 0};
  return dijkstra_impl(g, std::span(&seed, 1), lengths);
}

namespace {

// Dijkstra from `src` skipping edge `skip` (undirected edge removal).
ShortestPaths dijkstra_skip_edge(const WeightedGraph& g, int src, int skip) {
  ShortestPaths r;
  r.dist.assign(g.n, kInfDist);
  r.parent.assign(g.n, -1);
  r.parent_edge.assign(g.n, -1);
  using Item = std::pair<std::int64_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  r.dist[src] = 0;
  pq.emplace(0, src);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != r.dist[u]) continue;
    for (auto [v, e] : g.adj[u]) {
      if (e == skip) continue;
      std::int64_t nd = d + g.edges[e].w;
      if (nd < r.dist[v]) {
        r.dist[v] = nd;
        r.parent[v] = u;
        r.parent_edge[v] = e;
        pq.emplace(nd, v);
      }
    }
  }
  return r;
}

std::vector<int> trace_path(const ShortestPaths& sp, int from, int to) {
  std::vector<int> nodes;
  for (int x = to; x != -1; x = sp.parent[x]) {
    nodes.push_back(x);
    if (x == from) break;
  }
  std::reverse(nodes.begin(), nodes.end());
  return nodes;
}

}  // namespace

std::optional<CycleRecord> exact_mwc_witness(const WeightedGraph& g) {
  std::optional<CycleRecord> best;
  if (g.directed) {
    // Shortest v->u distances for every edge (u,v): one Dijkstra per node.
    for (int e = 0; e < g.m(); ++e) {
      const Edge& ed = g.edges[e];
      ShortestPaths sp = dijkstra(g, ed.v);
      if (sp.dist[ed.u] == kInfDist) continue;
      std::int64_t w = sp.dist[ed.u] + ed.w;
      if (!best || w < best->weight) {
        CycleRecord c;
        c.nodes = trace_path(sp, ed.v, ed.u);
        c.nodes.push_back(ed.v);
        c.weight = w;
        c.hops = static_cast<int>(c.nodes.size()) - 1;
        best = std::move(c);
      }
    }
  } else {
    for (int e = 0; e < g.m(); ++e) {
      const Edge& ed = g.edges[e];
      ShortestPaths sp = dijkstra_skip_edge(g, ed.u, e);
      if (sp.dist[ed.v] == kInfDist) continue;
      std::int64_t w = sp.dist[ed.v] + ed.w;
      if (!best || w < best->weight) {
        CycleRecord c;
        c.nodes = trace_path(sp, ed.u, ed.v);
        c.nodes.push_back(ed.u);
        c.weight = w;
        c.hops = static_cast<int>(c.nodes.size()) - 1;
        best = std::move(c);
      }
    }
  }
  return best;
}

std::optional<std::int64_t> exact_mwc(const WeightedGraph& g) {
  auto w = exact_mwc_witness(g);
  if (!w) return std::nullopt;
  return w->weight;
}

std::optional<std::int64_t> enumerate_cycles_bruteforce(const WeightedGraph& g, int cap) {
  if (g.n > cap) throw std::invalid_argument("enumerate_cycles_bruteforce: size cap exceeded");
  std::optional<std::int64_t> best;
  std::vector<char> on_path(g.n, 0);

  // Canonical enumeration: cycles start at their smallest node id; undirected
  // cycles additionally fix an orientation by requiring second < last.
  std::vector<int> stack;
  auto consider = [&](std::int64_t w, int hops) {
    if (g.directed ? hops < 2 : hops < 3) return;
    if (!best || w < *best) best = w;
  };

  std::function<void(int, int, std::int64_t)> dfs = [&](int start, int u, std::int64_t w) {
    for (auto [v, e] : g.adj[u]) {
      if (v == start) {
        int hops = static_cast<int>(stack.size());
        // Undirected cycles are enumerated once: orientation fixed by second < last.
        if (!g.directed && stack.size() >= 3 && stack[1] > stack.back()) continue;
        consider(w + g.edges[e].w, hops);
        continue;
      }
      if (v < start || on_path[v]) continue;
      on_path[v] = 1;
      stack.push_back(v);
      dfs(start, v, w + g.edges[e].w);
      stack.pop_back();
      on_path[v] = 0;
    }
  };

  for (int s = 0; s < g.n; ++s) {
    on_path[s] = 1;
    stack = {s};
    dfs(s, s, 0);
    on_path[s] = 0;
  }
  return best;
}

int unweighted_diameter(const WeightedGraph& g) {
  // Underlying undirected graph: directed edges are traversable both ways.
  std::vector<std::vector<int>> nb(g.n);
  for (const Edge& e : g.edges) {
    nb[e.u].push_back(e.v);
    nb[e.v].push_back(e.u);
  }
  int diam = 0;
  std::vector<int> dist(g.n);
  for (int root = 0; root < g.n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<int> q;
    dist[root] = 0;
    q.push(root);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      diam = std::max(diam, dist[u]);
      for (int v : nb[u])
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
    }
  }
  return diam;
}

std::optional<std::int64_t> girth_unweighted(const WeightedGraph& g) {
  if (g.directed) throw std::invalid_argument("girth_unweighted: undirected graphs only");
  std::optional<std::int64_t> best;
  std::vector<int> dist(g.n), parent_edge(g.n);
  for (int root = 0; root < g.n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent_edge.begin(), parent_edge.end(), -1);
    std::queue<int> q;
    dist[root] = 0;
    q.push(root);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (auto [v, e] : g.adj[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          parent_edge[v] = e;
          q.push(v);
        }
      }
    }
    // Every non-tree edge closes a walk of length d(u)+d(v)+1 >= girth;
    // some root on the minimum cycle attains equality.
    for (int e = 0; e < g.m(); ++e) {
      const Edge& ed = g.edges[e];
      if (dist[ed.u] < 0 || dist[ed.v] < 0) continue;
      if (parent_edge[ed.u] == e || parent_edge[ed.v] == e) continue;
      std::int64_t cand = static_cast<std::int64_t>(dist[ed.u]) + dist[ed.v] + 1;
      if (!best || cand < *best) best = cand;
    }
  }
  return best;
}

}  // namespace mwc
