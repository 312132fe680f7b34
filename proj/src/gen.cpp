#include "mcf/gen.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <set>

#include "mcf/cutcheck.hpp"
#include "mcf/sufficiency.hpp"

namespace mcf {

Instance spindleInstance(int p) {
  GraphPair pair = spindlePair(p);
  return Instance(pair, std::vector<Rat>(pair.supply.edges.size(), Rat(1)),
                  std::vector<Rat>(pair.demand.edges.size(), Rat(1)));
}

Instance badK4Instance() {
  // labels: 0,1,2 one side path, 3,4,5 the other; the four corner edges plus
  // the two paths make the supply, demands join the path ends and the middles
  Graph s(6), d(6);
  s.addEdge(0, 3);
  s.addEdge(0, 5);
  s.addEdge(2, 3);
  s.addEdge(2, 5);
  s.addEdge(0, 1);
  s.addEdge(1, 2);
  s.addEdge(3, 4);
  s.addEdge(4, 5);
  d.addEdge(0, 2);
  d.addEdge(3, 5);
  d.addEdge(1, 4);
  std::vector<Rat> caps(8, Rat(1));
  std::vector<Rat> dems = {Rat(1), Rat(1), Rat(2)};
  return Instance(GraphPair(std::move(s), std::move(d)), std::move(caps), std::move(dems));
}

namespace {

long pick(std::mt19937_64& rng, long n) { return long(rng() % (unsigned long long)(n)); }

}  // namespace

GraphPair randomSpPair(unsigned long long seed, int maxVertices, int maxDemands) {
  if (maxVertices < 2) throw ContractError("randomSpPair: need at least 2 vertices");
  if (maxDemands < 1) throw ContractError("randomSpPair: need at least 1 demand");
  std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ULL);

  std::vector<std::pair<int, int>> edges = {{0, 1}};
  int n = 2;
  int targetVerts = 2 + int(maxVertices > 2 ? pick(rng, maxVertices - 1) : 0);
  int budget = 6 * maxVertices + 8;
  while (n < targetVerts && budget-- > 0) {
    int e = int(pick(rng, long(edges.size())));
    if (pick(rng, 100) < 60) {
      // series: subdivide the edge with a fresh vertex
      int w = n++;
      int v = edges[e].second;
      edges[e].second = w;
      edges.push_back({w, v});
    } else {
      edges.push_back(edges[e]);
    }
  }
  int extraParallel = int(pick(rng, 1 + long(edges.size()) / 2));
  for (int i = 0; i < extraParallel; ++i) edges.push_back(edges[pick(rng, long(edges.size()))]);

  Graph supply(n);
  for (auto& [a, b] : edges) supply.addEdge(a, b);

  Graph demand(n);
  int wanted = 1 + int(pick(rng, maxDemands));
  std::set<std::pair<int, int>> used;
  for (int i = 0; i < wanted; ++i) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      int a = int(pick(rng, n)), b = int(pick(rng, n));
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      if (attempt < 7 && used.count({a, b})) continue;
      used.insert({a, b});
      demand.addEdge(a, b);
      break;
    }
  }
  return GraphPair(std::move(supply), std::move(demand));
}

Instance randomSpInstance(unsigned long long seed, const RandomInstanceOptions& opt) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  GraphPair pair = randomSpPair(rng(), opt.maxVertices, opt.maxDemands);
  std::vector<Rat> caps, dems;
  for (size_t e = 0; e < pair.supply.edges.size(); ++e)
    caps.push_back(Rat(1 + pick(rng, opt.maxCapacity)));
  for (size_t d = 0; d < pair.demand.edges.size(); ++d)
    dems.push_back(Rat(1 + pick(rng, opt.maxDemandValue)));
  Instance inst(std::move(pair), std::move(caps), std::move(dems));

  if (opt.forceEulerian) {
    // weighted degree parity per vertex; odd vertices pair up, and +1 along a
    // supply path between two of them flips exactly their parities
    for (int round = 0; round < 4 * inst.vertexCount() + 8; ++round) {
      EulerianReport rep = checkEulerian(inst);
      if (rep.eulerian) break;
      std::vector<int> odd;
      std::vector<Rat> weight(inst.vertexCount(), Rat(0));
      for (int e = 0; e < int(inst.supply().edges.size()); ++e) {
        weight[inst.supply().edges[e].u] += inst.capacities[e];
        weight[inst.supply().edges[e].v] += inst.capacities[e];
      }
      for (int d = 0; d < int(inst.demand().edges.size()); ++d) {
        weight[inst.demand().edges[d].u] += inst.demands[d];
        weight[inst.demand().edges[d].v] += inst.demands[d];
      }
      for (int v = 0; v < inst.vertexCount(); ++v)
        if (!ratIsInteger(weight[v] / 2)) odd.push_back(v);
      if (odd.size() < 2) throw ContractError("randomSpInstance: odd parity count is odd");
      // BFS path between the first two odd vertices
      int s = odd[0], t = odd[1];
      std::vector<int> via(inst.vertexCount(), -1);
      std::vector<char> seen(inst.vertexCount(), 0);
      std::queue<int> q;
      q.push(s);
      seen[s] = 1;
      while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int e = 0; e < int(inst.supply().edges.size()); ++e) {
          const Edge& ed = inst.supply().edges[e];
          int y = (ed.u == x) ? ed.v : (ed.v == x ? ed.u : -1);
          if (y < 0 || seen[y]) continue;
          seen[y] = 1;
          via[y] = e;
          q.push(y);
        }
      }
      if (!seen[t]) throw ContractError("randomSpInstance: supply not connected");
      for (int x = t; x != s;) {
        int e = via[x];
        inst.capacities[e] += 1;
        x = inst.supply().other(e, x);
      }
    }
    if (!checkEulerian(inst).eulerian)
      throw ContractError("randomSpInstance: parity repair did not converge");
  }

  if (opt.forceCutCondition) {
    for (int round = 0; round < 200; ++round) {
      CutReport rep = checkCutCondition(inst);
      if (rep.satisfied) break;
      if (rep.worstCut.crossingSupply.empty())
        throw ContractError("randomSpInstance: violated cut crosses no supply edge");
      inst.capacities[rep.worstCut.crossingSupply.front()] += -rep.worstCut.surplus;
    }
    if (!checkCutCondition(inst).satisfied)
      throw ContractError("randomSpInstance: cut repair did not converge");
  }
  return inst;
}

}  // namespace mcf
