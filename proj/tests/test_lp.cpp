#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>

#include "doctest.h"
#include "mcf/cutcheck.hpp"
#include "mcf/gen.hpp"
#include "mcf/lp.hpp"
#include "mcf/sufficiency.hpp"

using namespace mcf;

namespace {

GraphPair pairOf(int n) { return GraphPair(Graph(n), Graph(n)); }

Instance singleEdge(const Rat& cap, const Rat& dem) {
  GraphPair pair = pairOf(2);
  pair.supply.addEdge(0, 1);
  pair.demand.addEdge(0, 1);
  return Instance(pair, {cap}, {dem});
}

// unit K_{2,m}: hubs 0,1, rim 2..m+1, hub demand + rim cycle demand
Instance unitK2m(int m) { return spindleInstance(m); }

void checkLoadsConsistent(const Instance& inst, const MultiflowSolution& sol) {
  std::vector<Rat> load(inst.supply().edges.size(), Rat(0));
  std::vector<Rat> delivered(inst.demand().edges.size(), Rat(0));
  for (const PathFlow& f : sol.flows) {
    REQUIRE(f.demandEdge >= 0);
    REQUIRE(f.demandEdge < int(delivered.size()));
    CHECK(f.amount > 0);
    delivered[f.demandEdge] += f.amount;
    const Edge& d = inst.demand().edges[f.demandEdge];
    CHECK(f.path.verts.front() + f.path.verts.back() == d.u + d.v);
    for (int e : f.path.edges) load[e] += f.amount;
  }
  for (size_t e = 0; e < load.size(); ++e) {
    CHECK(load[e] == sol.edgeLoad[e]);
    CHECK(load[e] <= sol.congestion * inst.capacities[e]);
    CHECK(sol.residual[e] == inst.capacities[e] - load[e]);
  }
  for (size_t d = 0; d < delivered.size(); ++d) CHECK(delivered[d] == inst.demands[d]);
}

}  // namespace

// --------------------------------------------------------------- LP kernel ----

TEST_CASE("one-variable box") {
  RationalLP lp;
  lp.maximize = true;
  int x = lp.addVariable(Rat(1));
  lp.addRow({{x, Rat(1)}}, RowSense::LE, Rat(3));
  LpResult r = solveLp(lp);
  REQUIRE(r.status == LpResult::Optimal);
  CHECK(r.objective == 3);
  CHECK(r.x[0] == 3);
  CHECK(r.dual[0] == 1);
}

TEST_CASE("two variables sharing one unit") {
  RationalLP lp;
  lp.maximize = true;
  int x = lp.addVariable(Rat(1));
  int y = lp.addVariable(Rat(1));
  lp.addRow({{x, Rat(1)}, {y, Rat(1)}}, RowSense::LE, Rat(1));
  LpResult r = solveLp(lp);
  REQUIRE(r.status == LpResult::Optimal);
  CHECK(r.objective == 1);
  CHECK(r.x[x] + r.x[y] == 1);
}

TEST_CASE("redundant and degenerate rows terminate") {
  RationalLP lp;
  lp.maximize = true;
  int x = lp.addVariable(Rat(1));
  int y = lp.addVariable(Rat(0));
  lp.addRow({{x, Rat(1)}}, RowSense::LE, Rat(2));
  lp.addRow({{x, Rat(1)}}, RowSense::LE, Rat(2));
  lp.addRow({{x, Rat(2)}}, RowSense::LE, Rat(4));
  lp.addRow({{x, Rat(1)}, {y, Rat(1)}}, RowSense::GE, Rat(0));
  lp.addRow({{y, Rat(1)}}, RowSense::EQ, Rat(0));
  LpResult r = solveLp(lp);
  REQUIRE(r.status == LpResult::Optimal);
  CHECK(r.objective == 2);
  CHECK(r.x[y] == 0);
}

TEST_CASE("infeasible and unbounded verdicts") {
  {
    RationalLP lp;
    int x = lp.addVariable(Rat(1));
    lp.addRow({{x, Rat(1)}}, RowSense::LE, Rat(-1));
    CHECK(solveLp(lp).status == LpResult::Infeasible);
  }
  {
    RationalLP lp;
    lp.maximize = true;
    int x = lp.addVariable(Rat(1));
    lp.addRow({{x, Rat(-1)}}, RowSense::LE, Rat(5));
    CHECK(solveLp(lp).status == LpResult::Unbounded);
  }
  {
    RationalLP lp;
    int x = lp.addVariable(Rat(1));
    int y = lp.addVariable(Rat(1));
    lp.addRow({{x, Rat(1)}, {y, Rat(1)}}, RowSense::EQ, Rat(1));
    lp.addRow({{x, Rat(1)}, {y, Rat(1)}}, RowSense::EQ, Rat(2));
    CHECK(solveLp(lp).status == LpResult::Infeasible);
  }
}

TEST_CASE("strong duality holds exactly on random dense programs") {
  std::mt19937_64 rng(11);
  auto pick = [&](int lo, int hi) { return lo + int(rng() % (hi - lo + 1)); };
  int optimal = 0;
  for (int it = 0; it < 120; ++it) {
    RationalLP lp;
    lp.maximize = (it % 2) == 0;
    int nv = pick(1, 4);
    for (int j = 0; j < nv; ++j) lp.addVariable(Rat(pick(-3, 3)));
    int nr = pick(1, 5);
    for (int i = 0; i < nr; ++i) {
      std::vector<std::pair<int, Rat>> terms;
      for (int j = 0; j < nv; ++j)
        if (rng() % 2) terms.push_back({j, Rat(pick(-2, 3))});
      if (terms.empty()) terms.push_back({0, Rat(1)});
      RowSense sense = std::array{RowSense::LE, RowSense::EQ, RowSense::GE}[rng() % 3];
      lp.addRow(std::move(terms), sense, Rat(pick(0, 6)));
    }
    LpResult r = solveLp(lp);
    if (r.status != LpResult::Optimal) continue;
    ++optimal;
    // verify primal feasibility and the duality identity ourselves
    Rat dualObj(0);
    for (size_t i = 0; i < lp.rows.size(); ++i) {
      Rat lhs(0);
      for (auto& [j, a] : lp.rows[i].terms) lhs += a * r.x[j];
      switch (lp.rows[i].sense) {
        case RowSense::LE: CHECK(lhs <= lp.rows[i].rhs); break;
        case RowSense::GE: CHECK(lhs >= lp.rows[i].rhs); break;
        case RowSense::EQ: CHECK(lhs == lp.rows[i].rhs); break;
      }
      dualObj += r.dual[i] * lp.rows[i].rhs;
    }
    Rat primalObj(0);
    for (int j = 0; j < nv; ++j) primalObj += lp.objective[j] * r.x[j];
    CHECK(primalObj == r.objective);
    CHECK(dualObj == r.objective);
  }
  CHECK(optimal >= 25);  // the sweep must actually exercise the optimal path
}

// ------------------------------------------------------------- congestion ----

TEST_CASE("congestion oracles") {
  MultiflowSolution half = minCongestion(singleEdge(Rat(2), Rat(1)));
  CHECK(half.congestion == makeRat(1, 2));
  checkLoadsConsistent(singleEdge(Rat(2), Rat(1)), half);

  Instance k23 = unitK2m(3);
  MultiflowSolution sp3 = minCongestion(k23);
  CHECK(sp3.congestion == makeRat(4, 3));
  checkLoadsConsistent(k23, sp3);

  Instance k25 = unitK2m(5);
  MultiflowSolution sp5 = minCongestion(k25);
  CHECK(sp5.congestion == makeRat(6, 5));
  checkLoadsConsistent(k25, sp5);

  // the unit even spindle is NOT cut-ok: one hub plus an opposite rim pair
  // against the rest crosses 4 capacity but all 5 demands, forcing 5/4
  Instance k24 = unitK2m(4);
  CHECK(surplus(k24, {0, 2, 4}) == -1);
  CHECK(minCongestion(k24).congestion == makeRat(5, 4));
}

TEST_CASE("congestion scales against capacity scaling") {
  Instance base = unitK2m(3);
  std::vector<Rat> caps = base.capacities;
  for (Rat& c : caps) c *= makeRat(3, 7);
  Instance scaled(GraphPair(base.supply(), base.demand()), caps, base.demands);
  CHECK(minCongestion(scaled).congestion == makeRat(4, 3) * makeRat(7, 3));
}

TEST_CASE("dual metric certifies the congestion value") {
  {
    Instance inst = singleEdge(Rat(2), Rat(1));
    MetricAssignment m = dualMetric(inst);
    CHECK(m.lengths[0] == makeRat(1, 2));
    CHECK(m.distances[0] == makeRat(1, 2));
    Rat obj(0);
    for (size_t d = 0; d < m.distances.size(); ++d) obj += inst.demands[d] * m.distances[d];
    CHECK(obj == makeRat(1, 2));
  }
  {
    Instance inst = unitK2m(3);
    MetricAssignment m = dualMetric(inst);
    Rat paid(0);
    for (size_t e = 0; e < m.lengths.size(); ++e) {
      CHECK(m.lengths[e] >= 0);
      paid += inst.capacities[e] * m.lengths[e];
    }
    CHECK(paid == 1);
    Rat obj(0);
    for (size_t d = 0; d < m.distances.size(); ++d) {
      auto dist = shortestPathDistance(inst.supply(), m.lengths, inst.demand().edges[d].u,
                                       inst.demand().edges[d].v);
      REQUIRE(dist.has_value());
      CHECK(*dist == m.distances[d]);
      obj += inst.demands[d] * m.distances[d];
    }
    CHECK(obj == makeRat(4, 3));
  }
}

TEST_CASE("congestionWithMetric pairs a flow with its certificate") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 40; ++it) {
    RandomInstanceOptions opt;
    opt.maxVertices = 8;
    Instance inst = randomSpInstance(rng(), opt);
    if (!isConnected(inst.supply())) continue;
    Rat totalDem(0);
    for (const Rat& d : inst.demands) totalDem += d;
    if (totalDem == 0) continue;
    CongestionSolution cs = congestionWithMetric(inst);
    Rat dualObj(0);
    for (size_t d = 0; d < cs.metric.distances.size(); ++d)
      dualObj += inst.demands[d] * cs.metric.distances[d];
    CHECK(dualObj == cs.flow.congestion);
    checkLoadsConsistent(inst, cs.flow);
  }
}

TEST_CASE("shortest path distances") {
  Graph g(4);
  g.addEdge(0, 1);
  g.addEdge(1, 2);
  g.addEdge(2, 3);
  g.addEdge(0, 3);
  std::vector<Rat> len = {Rat(1), Rat(1), Rat(1), Rat(5)};
  CHECK(*shortestPathDistance(g, len, 0, 3) == 3);
  CHECK(*shortestPathDistance(g, len, 0, 0) == 0);
  len[3] = Rat(2);
  CHECK(*shortestPathDistance(g, len, 0, 3) == 2);

  Graph split(3);
  split.addEdge(0, 1);
  CHECK(!shortestPathDistance(split, {Rat(1)}, 0, 2).has_value());
}

// ------------------------------------------------------- cut-cone metrics ----

TEST_CASE("cut metric on a single edge is exact") {
  GraphPair pair = pairOf(2);
  pair.supply.addEdge(0, 1);
  pair.demand.addEdge(0, 1);
  MetricAssignment m{{Rat(1)}, {Rat(1)}};
  CutMetricSolution cm = cutMetric(pair, m);
  CHECK(cm.distortion == 1);
  REQUIRE(cm.weights.size() == 1);
  CHECK(cm.weights[0].second == 1);
  CHECK(cm.weights[0].first.size() == 1);
}

TEST_CASE("odd spindle dual metric needs distortion 4/3") {
  Instance inst = unitK2m(3);
  MetricAssignment m = dualMetric(inst);
  CutMetricSolution cm = cutMetric(GraphPair(inst.supply(), inst.demand()), m);
  CHECK(cm.distortion == makeRat(4, 3));
  for (auto& [side, w] : cm.weights) {
    CHECK(w > 0);
    CHECK(isCentral(inst, side));
  }
}

TEST_CASE("path metrics embed into cuts with no distortion") {
  // path graph, demand across it; l = 1 per edge is a tree metric
  GraphPair pair = pairOf(4);
  pair.supply.addEdge(0, 1);
  pair.supply.addEdge(1, 2);
  pair.supply.addEdge(2, 3);
  pair.demand.addEdge(0, 3);
  MetricAssignment m{{Rat(1), Rat(1), Rat(1)}, {Rat(3)}};
  CutMetricSolution cm = cutMetric(pair, m);
  CHECK(cm.distortion == 1);
  // cut distances reproduce the path metric on the demand pair
  Rat along(0);
  for (auto& [side, w] : cm.weights) {
    bool in0 = std::find(side.begin(), side.end(), 0) != side.end();
    bool in3 = std::find(side.begin(), side.end(), 3) != side.end();
    if (in0 != in3) along += w;
  }
  CHECK(along >= 3);
}

// --------------------------------------------------------- general search ----

TEST_CASE("general solution on a trivially routable pair") {
  GraphPair pair = pairOf(2);
  pair.supply.addEdge(0, 1);
  pair.demand.addEdge(0, 1);
  GeneralSolution gs = generalSolution(pair);
  CHECK(gs.gap == 1);
  CHECK(verifyComplementarySlackness(gs).ok);
  CHECK(bubbleSufficiencyTest(gs) == BubbleVerdict::CutSufficient);
}

TEST_CASE("general solution finds the spindle gap") {
  GeneralSolution gs = generalSolution(spindlePair(3));
  CHECK(gs.gap >= makeRat(4, 3));
  CHECK(gs.gap <= 2);
  CHECK(gs.rounds >= 1);
  for (size_t i = 1; i < gs.objectiveLog.size(); ++i)
    CHECK(gs.objectiveLog[i] >= gs.objectiveLog[i - 1]);
  SlacknessReport slack = verifyComplementarySlackness(gs);
  CHECK(slack.ok);
  CHECK(slack.violations.empty());
}

TEST_CASE("round limit is respected") {
  GeneralOptions opt;
  opt.maxRounds = 1;
  GeneralSolution gs = generalSolution(spindlePair(5), opt);
  CHECK(gs.rounds <= 1);
  CHECK(verifyComplementarySlackness(gs).ok);
}

TEST_CASE("seeded starts stay verifiable") {
  for (unsigned long long seed : {1ull, 2ull, 9ull}) {
    GeneralOptions opt;
    opt.seed = seed;
    GeneralSolution gs = generalSolution(spindlePair(3), opt);
    CHECK(gs.gap >= 1);
    CHECK(verifyComplementarySlackness(gs).ok);
  }
}

TEST_CASE("slackness audit rejects weight on a slack cut") {
  GeneralSolution gs = generalSolution(spindlePair(3));
  REQUIRE(verifyComplementarySlackness(gs).ok);
  // hub singleton has surplus 2 under unit weights: never tight
  GeneralSolution bad = gs;
  bad.cuts.weights.push_back({{0}, makeRat(1, 100)});
  SlacknessReport rep = verifyComplementarySlackness(bad);
  CHECK(!rep.ok);
  CHECK(!rep.violations.empty());
}

TEST_CASE("bubble test outcomes") {
  // odd spindle: every demand path crosses tight rim cuts twice somewhere
  GeneralSolution odd = generalSolution(spindlePair(3));
  CHECK(bubbleSufficiencyTest(odd) == BubbleVerdict::Inconclusive);

  // even spindle: gap settles at 1
  GeneralSolution even = generalSolution(spindlePair(4));
  CHECK(even.gap == 1);
}
