#include "mcf/graph.hpp"

#include <algorithm>
#include <functional>

namespace mcf {

Graph::Graph(int vertexCount) : n(vertexCount) {
  if (vertexCount < 0) throw ContractError("Graph: negative vertex count");
}

int Graph::addEdge(int u, int v, int id) {
  checkVertex(u, "addEdge");
  checkVertex(v, "addEdge");
  if (u == v) throw ContractError("addEdge: self-loop at vertex " + std::to_string(u));
  int idx = static_cast<int>(edges.size());
  edges.push_back(Edge{u, v, id == -1 ? idx : id});
  return idx;
}

int Graph::other(int edgeIdx, int vertex) const {
  const Edge& e = edges.at(edgeIdx);
  if (e.u == vertex) return e.v;
  if (e.v == vertex) return e.u;
  throw ContractError("other: vertex " + std::to_string(vertex) + " not on edge " +
                      std::to_string(edgeIdx));
}

void Graph::checkVertex(int v, const char* op) const {
  if (!hasVertex(v))
    throw ContractError(std::string(op) + ": vertex label " + std::to_string(v) +
                        " out of range [0," + std::to_string(n) + ")");
}

void Graph::checkEdge(int e, const char* op) const {
  if (e < 0 || e >= static_cast<int>(edges.size()))
    throw ContractError(std::string(op) + ": edge index " + std::to_string(e) + " out of range");
}

int Graph::degree(int v) const {
  checkVertex(v, "degree");
  int d = 0;
  for (const Edge& e : edges) d += (e.u == v) + (e.v == v);
  return d;
}

int Graph::edgeByStableId(int id) const {
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].id == id) return static_cast<int>(i);
  return -1;
}

Adjacency::Adjacency(const Graph& g) : inc(g.n) {
  for (size_t i = 0; i < g.edges.size(); ++i) {
    inc[g.edges[i].u].push_back(static_cast<int>(i));
    inc[g.edges[i].v].push_back(static_cast<int>(i));
  }
}

std::vector<int> componentIds(const Graph& g) {
  Adjacency adj(g);
  std::vector<int> comp(g.n, -1);
  int next = 0;
  std::vector<int> stack;
  for (int s = 0; s < g.n; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : adj.inc[v]) {
        int w = g.other(e, v);
        if (comp[w] == -1) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return comp;
}

bool isConnected(const Graph& g) {
  if (g.n == 0) return true;
  auto comp = componentIds(g);
  return *std::max_element(comp.begin(), comp.end()) == 0;
}

bool inducesConnectedMask(const Graph& g, const Adjacency& adj, const std::vector<char>& inSet,
                          int anyMember) {
  std::vector<char> seen(g.n, 0);
  std::vector<int> stack{anyMember};
  seen[anyMember] = 1;
  int visited = 1;
  int total = 0;
  for (int v = 0; v < g.n; ++v) total += inSet[v] ? 1 : 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e : adj.inc[v]) {
      int w = g.other(e, v);
      if (inSet[w] && !seen[w]) {
        seen[w] = 1;
        ++visited;
        stack.push_back(w);
      }
    }
  }
  return visited == total;
}

bool inducesConnected(const Graph& g, const std::vector<int>& verts) {
  if (verts.empty()) return false;
  Adjacency adj(g);
  std::vector<char> inSet(g.n, 0);
  for (int v : verts) {
    g.checkVertex(v, "inducesConnected");
    inSet[v] = 1;
  }
  return inducesConnectedMask(g, adj, inSet, verts.front());
}

namespace {

// Shared lowpoint DFS for cut vertices, bridges, and blocks.
struct BlockDfs {
  const Graph& g;
  Adjacency adj;
  std::vector<int> disc, low;
  std::vector<char> isCut;
  std::vector<int> bridgeList;
  std::vector<int> edgeStack;
  std::vector<std::vector<int>> blockList;
  int timer = 0;

  explicit BlockDfs(const Graph& g) : g(g), adj(g), disc(g.n, -1), low(g.n, 0), isCut(g.n, 0) {}

  void run() {
    for (int v = 0; v < g.n; ++v)
      if (disc[v] == -1) dfs(v, -1);
  }

  void dfs(int v, int parentEdge) {
    disc[v] = low[v] = timer++;
    int children = 0;
    for (int e : adj.inc[v]) {
      if (e == parentEdge) continue;
      int w = g.other(e, v);
      if (disc[w] == -1) {
        edgeStack.push_back(e);
        ++children;
        dfs(w, e);
        low[v] = std::min(low[v], low[w]);
        if (low[w] > disc[v]) bridgeList.push_back(e);
        if ((parentEdge != -1 && low[w] >= disc[v]) || (parentEdge == -1 && children > 1))
          isCut[v] = 1;
        if (low[w] >= disc[v]) {
          std::vector<int> blk;
          while (true) {
            int top = edgeStack.back();
            edgeStack.pop_back();
            blk.push_back(top);
            if (top == e) break;
          }
          blockList.push_back(std::move(blk));
        }
      } else if (disc[w] < disc[v]) {
        edgeStack.push_back(e);
        low[v] = std::min(low[v], disc[w]);
      }
    }
  }
};

}  // namespace

std::vector<int> cutVertices(const Graph& g) {
  BlockDfs d(g);
  d.run();
  std::vector<int> out;
  for (int v = 0; v < g.n; ++v)
    if (d.isCut[v]) out.push_back(v);
  return out;
}

bool isBiconnected(const Graph& g) {
  if (g.n <= 1) return true;
  if (!isConnected(g)) return false;
  if (g.n == 2) return !g.edges.empty();
  return cutVertices(g).empty();
}

std::vector<int> bridgeEdges(const Graph& g) {
  BlockDfs d(g);
  d.run();
  std::sort(d.bridgeList.begin(), d.bridgeList.end());
  return d.bridgeList;
}

std::vector<std::vector<int>> blocks(const Graph& g) {
  BlockDfs d(g);
  d.run();
  for (auto& blk : d.blockList) std::sort(blk.begin(), blk.end());
  return d.blockList;
}

}  // namespace mcf
