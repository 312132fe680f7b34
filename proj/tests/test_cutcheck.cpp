#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "mcf/cutcheck.hpp"
#include "mcf/gen.hpp"
#include "mcf/sufficiency.hpp"

using namespace mcf;

namespace {

GraphPair pairOf(int n) { return GraphPair(Graph(n), Graph(n)); }

// matches a bipartition regardless of which side was picked as representative
bool hasSide(const std::vector<Cut>& cuts, std::vector<int> side, int n) {
  std::sort(side.begin(), side.end());
  std::vector<int> other;
  for (int v = 0; v < n; ++v)
    if (!std::binary_search(side.begin(), side.end(), v)) other.push_back(v);
  for (const Cut& c : cuts)
    if (c.side == side || c.side == other) return true;
  return false;
}

}  // namespace

// ---------------------------------------------------------- cut condition ----

TEST_CASE("unit 3-spindle is exactly tight") {
  Instance sp = spindleInstance(3);
  CutReport rep = checkCutCondition(sp);
  CHECK(rep.satisfied);
  CHECK(rep.minSurplus == 0);
  CHECK(rep.worstCut.surplus == 0);

  auto tight = enumerateTightCentralCuts(sp);
  CHECK(hasSide(tight, {2}, 5));
  CHECK(hasSide(tight, {3}, 5));
  CHECK(hasSide(tight, {4}, 5));
}

TEST_CASE("bad-K4 instance satisfies the cut condition") {
  CutReport rep = checkCutCondition(badK4Instance());
  CHECK(rep.satisfied);
  CHECK(rep.minSurplus == 0);
}

TEST_CASE("overloaded single edge is violated by minus two") {
  GraphPair pair = pairOf(2);
  pair.supply.addEdge(0, 1);
  pair.demand.addEdge(0, 1);
  Instance inst(pair, {Rat(1)}, {Rat(3)});
  CutReport rep = checkCutCondition(inst);
  CHECK(!rep.satisfied);
  CHECK(rep.minSurplus == -2);
  CHECK(rep.worstCut.surplus == -2);
  CHECK(rep.worstCut.crossingSupply.size() == 1);
  CHECK(rep.worstCut.crossingDemand.size() == 1);
}

TEST_CASE("engines agree and tie-break deterministically") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 300; ++it) {
    RandomInstanceOptions opt;
    opt.maxVertices = 12;
    Instance inst = randomSpInstance(rng(), opt);
    if (!isConnected(inst.supply())) continue;
    CutReport brute = checkCutCondition(inst, CutEngine::BruteForce);
    CutReport dp = checkCutCondition(inst, CutEngine::Auto);
    CHECK(brute.minSurplus == dp.minSurplus);
    CHECK(dp.worstCut.surplus == dp.minSurplus);
    CHECK(surplus(inst, dp.worstCut.side) == dp.minSurplus);

    CutReport again = checkCutCondition(inst, CutEngine::BruteForce);
    CHECK(again.worstCut.side == brute.worstCut.side);
  }
}

TEST_CASE("split checker flags demands across supply components") {
  GraphPair pair = pairOf(4);
  pair.supply.addEdge(0, 1);
  pair.supply.addEdge(2, 3);
  pair.demand.addEdge(1, 2);
  Instance inst(pair, {Rat(1), Rat(1)}, {Rat(1)});
  CutReport rep = checkCutConditionSplit(inst);
  CHECK(!rep.satisfied);
  CHECK(rep.minSurplus < 0);
  // the reported side must actually cross no supply edge
  CHECK(rep.worstCut.crossingSupply.empty());

  // with the stray demand zeroed, both components check out independently
  Instance ok(pair, {Rat(1), Rat(1)}, {Rat(0)});
  CHECK(checkCutConditionSplit(ok).satisfied);
}

// --------------------------------------------------------------- parity ----

TEST_CASE("eulerian oracles") {
  CHECK(checkEulerian(badK4Instance()).eulerian);
  CHECK(checkEulerian(spindleInstance(3)).eulerian);

  GraphPair pair = pairOf(2);
  pair.supply.addEdge(0, 1);
  Instance odd(pair, {Rat(1)}, {});
  EulerianReport rep = checkEulerian(odd);
  CHECK(!rep.eulerian);
  CHECK(rep.integral);
  CHECK((rep.oddVertex == 0 || rep.oddVertex == 1));

  Instance frac(pair, {makeRat(1, 2)}, {});
  EulerianReport rep2 = checkEulerian(frac);
  CHECK(!rep2.eulerian);
  CHECK(!rep2.integral);
}

TEST_CASE("vertex parity equals cut-surplus parity") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 200; ++it) {
    RandomInstanceOptions opt;
    opt.maxVertices = 9;
    opt.forceEulerian = (it % 2) == 0;
    Instance inst = randomSpInstance(rng(), opt);
    if (!isConnected(inst.supply())) continue;
    bool allEven = true;
    for (unsigned mask : centralCutMasks(inst.supply())) {
      std::vector<int> side;
      for (int v = 0; v < inst.vertexCount(); ++v)
        if ((mask >> v) & 1u) side.push_back(v);
      if (!ratIsInteger(surplus(inst, side) / 2)) allEven = false;
    }
    CHECK(checkEulerian(inst).eulerian == allEven);
  }
}

// ------------------------------------------------------------ tight cuts ----

TEST_CASE("tight cut enumeration") {
  auto none = enumerateTightCentralCuts(
      Instance(spindlePair(3), std::vector<Rat>(6, Rat(5)), std::vector<Rat>(4, Rat(1))));
  CHECK(none.empty());

  auto five = enumerateTightCentralCuts(spindleInstance(5));
  for (int r = 2; r <= 6; ++r) CHECK(hasSide(five, {r}, 7));
  for (const Cut& c : five) {
    CHECK(c.surplus == 0);
    CHECK(isCentral(spindleInstance(5), c.side));
    // representative side is the lexicographically smaller one
    CHECK(c.side == cutRepresentative(7, c.side));
  }
}

// ---------------------------------------------------------------- bubbles ----

TEST_CASE("bubbles of the 3-spindle") {
  Instance sp = spindleInstance(3);
  // demand 0 is the hub demand (0,1)
  auto hubBubbles = bubblesFor(sp, 0);
  CHECK(hubBubbles.size() == 3);
  CHECK((hubBubbles[0].size() == 1 && hubBubbles[0][0] >= 2));

  // demand (2,3): the remaining rim vertex is a bubble
  int rimDemand = -1;
  for (int d = 0; d < int(sp.demand().edges.size()); ++d) {
    const Edge& e = sp.demand().edges[d];
    if ((e.u == 2 && e.v == 3) || (e.u == 3 && e.v == 2)) rimDemand = d;
  }
  REQUIRE(rimDemand >= 0);
  auto rimBubbles = bubblesFor(sp, rimDemand);
  bool found = false;
  for (const auto& b : rimBubbles)
    if (b == std::vector<int>{4}) found = true;
  CHECK(found);

  for (const auto& b : rimBubbles) {
    CHECK(surplus(sp, b) == 0);
    CHECK(isCentral(sp, b));
    CHECK(std::find(b.begin(), b.end(), 2) == b.end());
    CHECK(std::find(b.begin(), b.end(), 3) == b.end());
  }

  Instance slack(spindlePair(3), std::vector<Rat>(6, Rat(5)), std::vector<Rat>(4, Rat(1)));
  CHECK(bubblesFor(slack, 0).empty());
}

TEST_CASE("bubble coverage") {
  Instance sp3 = spindleInstance(3);
  CHECK(isCoveredByBubbles(sp3, 0).covered);
  Instance sp5 = spindleInstance(5);
  CHECK(isCoveredByBubbles(sp5, 0).covered);

  GraphPair pair = pairOf(2);
  pair.supply.addEdge(0, 1);
  pair.demand.addEdge(0, 1);
  Instance single(pair, {Rat(2)}, {Rat(1)});
  CoverageReport rep = isCoveredByBubbles(single, 0);
  CHECK(!rep.covered);
  REQUIRE(rep.uncoveredPath.has_value());
  CHECK(rep.uncoveredPath->verts == std::vector<int>{0, 1});
  CHECK(!rep.multiCrossedTightCut.has_value());  // no tight cuts at all
}

TEST_CASE("uncovered non-tight path crosses some tight cut at least three times") {
  // tight rim singletons, but the demand (2,4) has the direct two-hop routes
  // covered and a long way around the rim that re-enters tight cuts
  Instance sp = spindleInstance(5);
  for (int d = 0; d < int(sp.demand().edges.size()); ++d) {
    CoverageReport rep = isCoveredByBubbles(sp, d);
    if (!rep.covered && rep.uncoveredPath) {
      REQUIRE(rep.multiCrossedTightCut.has_value());
      // count crossings explicitly
      const VPath& p = *rep.uncoveredPath;
      std::set<int> side(rep.multiCrossedTightCut->begin(), rep.multiCrossedTightCut->end());
      int crossings = 0;
      for (size_t i = 0; i + 1 < p.verts.size(); ++i)
        if (side.count(p.verts[i]) != side.count(p.verts[i + 1])) ++crossings;
      CHECK(crossings >= 3);
      CHECK(crossings % 2 == 1);
    }
  }
}

// ------------------------------------------------------------ enumeration ----

TEST_CASE("central cut masks cover exactly the central bipartitions") {
  Graph g = spindlePair(3).supply;
  auto masks = centralCutMasks(g);
  for (unsigned m : masks) {
    CHECK((m & 1u) == 1u);  // side containing vertex 0
    std::vector<int> side;
    for (int v = 0; v < g.n; ++v)
      if ((m >> v) & 1u) side.push_back(v);
    Instance probe(spindlePair(3), std::vector<Rat>(6, Rat(1)), std::vector<Rat>(4, Rat(0)));
    CHECK(isCentral(probe, side));
  }
  // spot totals: brute-force recount
  int central = 0;
  forEachHalfSubset(g.n, [&](unsigned mask) {
    std::vector<int> side;
    for (int v = 0; v < g.n; ++v)
      if ((mask >> v) & 1u) side.push_back(v);
    std::vector<int> rest;
    for (int v = 0; v < g.n; ++v)
      if (!((mask >> v) & 1u)) rest.push_back(v);
    if (inducesConnected(g, side) && inducesConnected(g, rest)) ++central;
  });
  CHECK(int(masks.size()) == central);
}
