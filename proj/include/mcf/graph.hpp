#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mcf {

// Raised on contract violations (bad labels, guard overruns, precondition
// failures). Message names the operation and the offending value.
struct ContractError : std::runtime_error {
  explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

// Undirected multigraph on dense vertex labels 0..n-1. Parallel edges are kept
// as distinct objects; self-loops are rejected on construction. `id` is a
// stable identity that survives minor operations, so witnesses and pullbacks
// can refer to edges of the original graph after any number of steps.
struct Edge {
  int u = -1;
  int v = -1;
  int id = -1;
};

struct Graph {
  int n = 0;
  std::vector<Edge> edges;

  Graph() = default;
  explicit Graph(int vertexCount);

  // Returns the edge index. id == -1 assigns the index as id.
  int addEdge(int u, int v, int id = -1);

  int other(int edgeIdx, int vertex) const;
  bool hasVertex(int v) const { return v >= 0 && v < n; }
  void checkVertex(int v, const char* op) const;
  void checkEdge(int e, const char* op) const;
  int degree(int v) const;
  // Index of the first edge with the given stable id, or -1.
  int edgeByStableId(int id) const;
};

// Incidence lists, built once where hot loops need them.
struct Adjacency {
  std::vector<std::vector<int>> inc;  // vertex -> edge indices
  explicit Adjacency(const Graph& g);
};

bool isConnected(const Graph& g);
// Component label per vertex (labels are 0-based, in order of first discovery).
std::vector<int> componentIds(const Graph& g);
// Whether the given vertex set induces a connected subgraph. Empty -> false.
bool inducesConnected(const Graph& g, const std::vector<int>& verts);
bool inducesConnectedMask(const Graph& g, const Adjacency& adj, const std::vector<char>& inSet,
                          int anyMember);

std::vector<int> cutVertices(const Graph& g);
// Connected with no cut vertex. A single edge and a single vertex both count.
bool isBiconnected(const Graph& g);
// Edge indices whose removal disconnects their component.
std::vector<int> bridgeEdges(const Graph& g);
// Biconnected components as edge-index groups (standard block decomposition).
std::vector<std::vector<int>> blocks(const Graph& g);

}  // namespace mcf
