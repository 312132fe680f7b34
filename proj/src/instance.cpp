#include "mcf/instance.hpp"

#include <algorithm>

namespace mcf {

GraphPair::GraphPair(Graph s, Graph d) : supply(std::move(s)), demand(std::move(d)) {
  if (supply.n != demand.n)
    throw ContractError("GraphPair: supply and demand must share one vertex set (" +
                        std::to_string(supply.n) + " vs " + std::to_string(demand.n) + ")");
}

Instance::Instance(GraphPair p, std::vector<Rat> caps, std::vector<Rat> dems)
    : pair(std::move(p)), capacities(std::move(caps)), demands(std::move(dems)) {
  if (capacities.size() != pair.supply.edges.size())
    throw ContractError("Instance: capacity count does not match supply edge count");
  if (demands.size() != pair.demand.edges.size())
    throw ContractError("Instance: demand value count does not match demand edge count");
  for (const Rat& c : capacities)
    if (c < 0) throw ContractError("Instance: negative capacity");
  for (const Rat& d : demands)
    if (d < 0) throw ContractError("Instance: negative demand");
}

Rat Instance::totalDemand() const {
  Rat t = 0;
  for (const Rat& d : demands) t += d;
  return t;
}

namespace {

std::vector<char> sideMask(const Instance& inst, const std::vector<int>& side, const char* op) {
  std::vector<char> mask(inst.vertexCount(), 0);
  for (int v : side) {
    inst.supply().checkVertex(v, op);
    if (mask[v]) throw ContractError(std::string(op) + ": duplicate vertex in cut side");
    mask[v] = 1;
  }
  return mask;
}

}  // namespace

Rat surplus(const Instance& inst, const std::vector<int>& side) {
  auto mask = sideMask(inst, side, "surplus");
  Rat s = 0;
  for (size_t i = 0; i < inst.supply().edges.size(); ++i) {
    const Edge& e = inst.supply().edges[i];
    if (mask[e.u] != mask[e.v]) s += inst.capacities[i];
  }
  for (size_t i = 0; i < inst.demand().edges.size(); ++i) {
    const Edge& e = inst.demand().edges[i];
    if (mask[e.u] != mask[e.v]) s -= inst.demands[i];
  }
  return s;
}

Cut cutOf(const Instance& inst, std::vector<int> side) {
  auto mask = sideMask(inst, side, "cutOf");
  Cut c;
  std::sort(side.begin(), side.end());
  c.side = std::move(side);
  c.surplus = 0;
  for (size_t i = 0; i < inst.supply().edges.size(); ++i) {
    const Edge& e = inst.supply().edges[i];
    if (mask[e.u] != mask[e.v]) {
      c.crossingSupply.push_back(static_cast<int>(i));
      c.surplus += inst.capacities[i];
    }
  }
  for (size_t i = 0; i < inst.demand().edges.size(); ++i) {
    const Edge& e = inst.demand().edges[i];
    if (mask[e.u] != mask[e.v]) {
      c.crossingDemand.push_back(static_cast<int>(i));
      c.surplus -= inst.demands[i];
    }
  }
  return c;
}

Rat pairSurplus(const Instance& inst, const std::vector<int>& xs, const std::vector<int>& ys) {
  auto xmask = sideMask(inst, xs, "pairSurplus");
  auto ymask = sideMask(inst, ys, "pairSurplus");
  for (int v = 0; v < inst.vertexCount(); ++v)
    if (xmask[v] && ymask[v])
      throw ContractError("pairSurplus: sets overlap at vertex " + std::to_string(v));
  Rat s = 0;
  auto between = [&](const Edge& e) {
    return (xmask[e.u] && ymask[e.v]) || (xmask[e.v] && ymask[e.u]);
  };
  for (size_t i = 0; i < inst.supply().edges.size(); ++i)
    if (between(inst.supply().edges[i])) s += inst.capacities[i];
  for (size_t i = 0; i < inst.demand().edges.size(); ++i)
    if (between(inst.demand().edges[i])) s -= inst.demands[i];
  return s;
}

bool isCentral(const Instance& inst, const std::vector<int>& side) {
  auto mask = sideMask(inst, side, "isCentral");
  int inCount = static_cast<int>(side.size());
  if (inCount == 0 || inCount == inst.vertexCount()) return false;
  Adjacency adj(inst.supply());
  int anyIn = -1, anyOut = -1;
  for (int v = 0; v < inst.vertexCount(); ++v) (mask[v] ? anyIn : anyOut) = v;
  std::vector<char> comask(mask.size());
  for (size_t i = 0; i < mask.size(); ++i) comask[i] = !mask[i];
  return inducesConnectedMask(inst.supply(), adj, mask, anyIn) &&
         inducesConnectedMask(inst.supply(), adj, comask, anyOut);
}

std::vector<int> cutRepresentative(int vertexCount, const std::vector<int>& side) {
  std::vector<char> mask(vertexCount, 0);
  for (int v : side) {
    if (v < 0 || v >= vertexCount) throw ContractError("cutRepresentative: vertex out of range");
    mask[v] = 1;
  }
  std::vector<int> a, b;
  for (int v = 0; v < vertexCount; ++v) (mask[v] ? a : b).push_back(v);
  return a <= b ? a : b;
}

// ---------------------------------------------------------------- minors ----

namespace {

Graph withoutEdge(const Graph& g, int idx) {
  Graph out(g.n);
  for (size_t i = 0; i < g.edges.size(); ++i)
    if (static_cast<int>(i) != idx) out.addEdge(g.edges[i].u, g.edges[i].v, g.edges[i].id);
  return out;
}

// Merge b into a, then shift labels above b down to keep them dense.
Graph contracted(const Graph& g, int a, int b) {
  Graph out(g.n - 1);
  auto relabel = [&](int v) {
    if (v == b) v = a;
    return v > b ? v - 1 : v;
  };
  for (const Edge& e : g.edges) {
    int u = relabel(e.u), v = relabel(e.v);
    if (u == v) continue;  // contraction loop, dropped
    out.addEdge(u, v, e.id);
  }
  return out;
}

}  // namespace

GraphPair applyMinorStep(const GraphPair& pair, const MinorStep& step) {
  switch (step.op) {
    case MinorOp::DeleteSupply: {
      int idx = pair.supply.edgeByStableId(step.edgeId);
      if (idx < 0)
        throw ContractError("applyMinorStep: no supply edge with id " +
                            std::to_string(step.edgeId));
      return GraphPair(withoutEdge(pair.supply, idx), pair.demand);
    }
    case MinorOp::DeleteDemand: {
      int idx = pair.demand.edgeByStableId(step.edgeId);
      if (idx < 0)
        throw ContractError("applyMinorStep: no demand edge with id " +
                            std::to_string(step.edgeId));
      return GraphPair(pair.supply, withoutEdge(pair.demand, idx));
    }
    case MinorOp::ContractSupply: {
      int idx = pair.supply.edgeByStableId(step.edgeId);
      if (idx < 0)
        throw ContractError("applyMinorStep: no supply edge with id " +
                            std::to_string(step.edgeId));
      const Edge& e = pair.supply.edges[idx];
      int a = std::min(e.u, e.v), b = std::max(e.u, e.v);
      // The contracted edge itself becomes a loop and vanishes with the rest.
      return GraphPair(contracted(withoutEdge(pair.supply, idx), a, b),
                       contracted(pair.demand, a, b));
    }
  }
  throw ContractError("applyMinorStep: unknown op");
}

SubPair inducedSubpair(const GraphPair& pair, const std::vector<int>& verts) {
  SubPair sub;
  sub.vertices = verts;
  std::sort(sub.vertices.begin(), sub.vertices.end());
  sub.vertices.erase(std::unique(sub.vertices.begin(), sub.vertices.end()), sub.vertices.end());
  std::vector<int> newLabel(pair.vertexCount(), -1);
  for (size_t i = 0; i < sub.vertices.size(); ++i) {
    pair.supply.checkVertex(sub.vertices[i], "inducedSubpair");
    newLabel[sub.vertices[i]] = int(i);
  }
  Graph s(int(sub.vertices.size())), d(int(sub.vertices.size()));
  for (size_t i = 0; i < pair.supply.edges.size(); ++i) {
    const Edge& e = pair.supply.edges[i];
    if (newLabel[e.u] >= 0 && newLabel[e.v] >= 0) {
      s.addEdge(newLabel[e.u], newLabel[e.v], e.id);
      sub.supplyEdgeOrig.push_back(int(i));
    }
  }
  for (size_t i = 0; i < pair.demand.edges.size(); ++i) {
    const Edge& e = pair.demand.edges[i];
    if (newLabel[e.u] >= 0 && newLabel[e.v] >= 0) {
      d.addEdge(newLabel[e.u], newLabel[e.v], e.id);
      sub.demandEdgeOrig.push_back(int(i));
    }
  }
  sub.pair = GraphPair(std::move(s), std::move(d));
  return sub;
}

MinorResult applyMinorSteps(const GraphPair& pair, const std::vector<MinorStep>& steps) {
  MinorResult res;
  res.pair = pair;
  res.vertexMap.resize(pair.vertexCount());
  for (int v = 0; v < pair.vertexCount(); ++v) res.vertexMap[v] = v;
  for (const MinorStep& step : steps) {
    if (step.op == MinorOp::ContractSupply) {
      int idx = res.pair.supply.edgeByStableId(step.edgeId);
      if (idx < 0)
        throw ContractError("applyMinorSteps: no supply edge with id " +
                            std::to_string(step.edgeId));
      const Edge& e = res.pair.supply.edges[idx];
      int a = std::min(e.u, e.v), b = std::max(e.u, e.v);
      for (int& m : res.vertexMap) {
        if (m == b) m = a;
        if (m > b) --m;
      }
    }
    res.pair = applyMinorStep(res.pair, step);
  }
  return res;
}

}  // namespace mcf
