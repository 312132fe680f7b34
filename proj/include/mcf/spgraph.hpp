#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "mcf/graph.hpp"

namespace mcf {

// ---------------------------------------------------------- decomposition ----

// Decomposition tree of a biconnected series-parallel graph. Leaves stand for
// single edges; internal nodes record how two pieces share their attachment
// vertices: in series (pieces share exactly the middle vertex) or in parallel
// (pieces share both attachments). The tree keeps a copy of the graph it
// decomposes so consumers need no side channel.
struct SpNode {
  enum Kind { Leaf, Series, Parallel };
  Kind kind = Leaf;
  int a = -1, b = -1;   // attachment pair, a < b
  int middle = -1;      // Series only: the contracted shared vertex
  int edge = -1;        // Leaf only: edge index in the decomposed graph
  int left = -1, right = -1;
};

struct SpTree {
  Graph graph;
  std::vector<SpNode> nodes;
  int root = -1;

  // Multiset of (u,v) endpoint pairs covered by the subtree; the root must
  // reproduce the graph's edges exactly.
  std::vector<std::pair<int, int>> evaluate(int node) const;
  // Vertices of the subtree's tile as a bitmask (graphs are desk scale).
  unsigned long long tileVertices(int node) const;
};

// Four disjoint connected branch sets, pairwise joined by at least one edge.
struct K4Witness {
  std::array<std::vector<int>, 4> branchSets;
};

struct Recognition {
  enum Status { SeriesParallel, HasK4Minor, NotBiconnected };
  Status status = NotBiconnected;
  std::optional<SpTree> tree;
  std::optional<K4Witness> k4;
  // For NotBiconnected: a cut vertex, or -1 when the graph is disconnected.
  int cutVertex = -1;
};

// Iterated parallel-merge / series-contraction, deterministically ordered so
// the same graph always yields the same tree. A stuck reduction on a
// biconnected graph certifies a K4 minor; the witness is pulled back through
// the partial reduction.
Recognition recognizeSeriesParallel(const Graph& g);

// Whether g plus an extra (u,v) edge is still series-parallel (recognition
// re-run on the augmented graph). Requires biconnected series-parallel g.
bool isSplitPair(const Graph& g, int u, int v);
// All split pairs (u < v), in lexicographic order.
std::vector<std::pair<int, int>> allSplitPairs(const Graph& g);

// ------------------------------------------------------------ orientation ----

// The unique acyclic orientation with source s and sink t: every edge is
// directed the way it occurs on s-t paths through it.
struct Orientation {
  Graph graph;
  std::vector<char> uToV;  // edge index -> directed edges[i].u -> edges[i].v
  int source = -1, sink = -1;

  int edgeTail(int e) const { return uToV[e] ? graph.edges[e].u : graph.edges[e].v; }
  int edgeHead(int e) const { return uToV[e] ? graph.edges[e].v : graph.edges[e].u; }
};

// Requires biconnected series-parallel g and a split pair (s,t); rejects
// non-biconnected input naming a cut vertex rather than orienting one block.
Orientation orient(const Graph& g, int s, int t);

// Directed reachability from x to y (reflexive).
bool reaches(const Orientation& o, int x, int y);

// u, v lie on a common source-sink path iff one reaches the other.
bool isCompliant(const Orientation& o, int u, int v);

// Terminals (w,z) of a non-compliant pair: last common vertex of the source
// prefixes and first common vertex of the sink suffixes. Verified to be a
// 2-vertex cut separating u from v and independent of the path choices.
std::pair<int, int> terminalsOf(const Orientation& o, int u, int v);

// Whether some directed path from outer.first to outer.second visits both
// inner vertices (non-strict: a pair brackets itself).
bool brackets(const Orientation& o, std::pair<int, int> outer, std::pair<int, int> inner);

// ----------------------------------------------------------------- paths ----

struct VPath {
  std::vector<int> verts;  // v0..vk
  std::vector<int> edges;  // edge index between consecutive vertices
};

inline constexpr int kPathEnumerationGuard = 100000;

// All simple u-v paths in lexicographic vertex order, guarded.
std::vector<VPath> allSimplePaths(const Graph& g, int u, int v,
                                  int guard = kPathEnumerationGuard);

// Simple s-t path through the given vertex (biconnected g). Two-augmentation
// vertex-capacity flow; deterministic.
VPath pathThroughVertex(const Graph& g, int s, int t, int via);
// Simple s-t path traversing the given edge.
VPath pathThroughEdge(const Graph& g, int s, int t, int edgeIdx);

// --------------------------------------------------------------- embedding ----

// Rotation system: per vertex, the cyclic order of incident edge indices.
// Faces are traced with the successor convention; outerFace designates one
// face as unbounded. Built from the decomposition tree (series pieces
// concatenate, parallel pieces nest), never from a general planarity test.
struct PlanarEmbedding {
  Graph graph;
  std::vector<std::vector<int>> rotation;
  std::vector<std::vector<std::pair<int, int>>> faces;  // darts (edge, tailVertex)
  int outerFace = -1;

  int faceOf(int edge, int tail) const;  // face on the dart's left
};

// Embedding with both u and v on the outer face (they always share a face in
// some series-parallel embedding; child orders at parallel nodes realize it).
PlanarEmbedding embedWithOuterPair(const Graph& g, int u, int v);

}  // namespace mcf
