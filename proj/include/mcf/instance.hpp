#pragma once

#include <string>
#include <vector>

#include "mcf/graph.hpp"
#include "mcf/rational.hpp"

namespace mcf {

// Supply/demand graph pair over one shared vertex set. Vertex labels are the
// coupling: supply edge (u,v) and demand edge (u,v) talk about the same u, v.
struct GraphPair {
  Graph supply;
  Graph demand;

  GraphPair() = default;
  GraphPair(Graph s, Graph d);
  int vertexCount() const { return supply.n; }
};

// A weighted pair: capacities by supply edge index, demand values by demand
// edge index. Weights are exact rationals and must be nonnegative.
struct Instance {
  GraphPair pair;
  std::vector<Rat> capacities;
  std::vector<Rat> demands;

  Instance() = default;
  Instance(GraphPair p, std::vector<Rat> caps, std::vector<Rat> dems);
  const Graph& supply() const { return pair.supply; }
  const Graph& demand() const { return pair.demand; }
  int vertexCount() const { return pair.vertexCount(); }
  Rat totalDemand() const;
};

// One side of a vertex bipartition plus everything the certificate needs.
// `side` is sorted; crossing lists are edge indices into the instance.
struct Cut {
  std::vector<int> side;
  std::vector<int> crossingSupply;
  std::vector<int> crossingDemand;
  Rat surplus;
};

// Capacity across the cut minus demand across it.
Rat surplus(const Instance& inst, const std::vector<int>& side);
Cut cutOf(const Instance& inst, std::vector<int> side);

// Surplus between two disjoint vertex sets: capacity of supply edges with one
// endpoint in each set minus the demand between them. Sets need not cover V.
Rat pairSurplus(const Instance& inst, const std::vector<int>& xs, const std::vector<int>& ys);

// A cut is central when both sides induce connected subgraphs of the supply
// graph (and both are nonempty).
bool isCentral(const Instance& inst, const std::vector<int>& side);

// Canonical representative of the two sides of a bipartition: the
// lexicographically smaller sorted vertex list of {C, V \ C}.
std::vector<int> cutRepresentative(int vertexCount, const std::vector<int>& side);

// ---------------------------------------------------------------- minors ----

enum class MinorOp { ContractSupply, DeleteSupply, DeleteDemand };

// Steps reference edges by stable id, so a recorded sequence replays against
// the original pair.
struct MinorStep {
  MinorOp op;
  int edgeId;
};

struct MinorResult {
  GraphPair pair;
  // original vertex label -> label in the reduced pair (contractions merge).
  std::vector<int> vertexMap;
};

// Contraction merges the endpoints in both graphs, re-endpoints demand edges,
// and deletes any self-loop it creates. Deletions remove one edge. Vertex
// labels stay dense; contraction lowers the vertex count by exactly 1.
GraphPair applyMinorStep(const GraphPair& pair, const MinorStep& step);
MinorResult applyMinorSteps(const GraphPair& pair, const std::vector<MinorStep>& steps);

// Subpair induced by a vertex set: keeps edges with both endpoints inside,
// relabels vertices densely (in ascending original order), and remembers
// where everything came from. Stable edge ids are preserved.
struct SubPair {
  GraphPair pair;
  std::vector<int> vertices;        // new label -> original vertex
  std::vector<int> supplyEdgeOrig;  // new supply edge index -> original index
  std::vector<int> demandEdgeOrig;
};
SubPair inducedSubpair(const GraphPair& pair, const std::vector<int>& verts);

// Canonical byte encoding of a pair up to label permutation: two pairs are
// isomorphic (respecting supply/demand edge kinds and multiplicities) iff
// their encodings match. Guarded at 16 vertices.
std::string canonicalForm(const GraphPair& pair);

inline constexpr int kCanonicalFormMaxVertices = 16;

}  // namespace mcf
