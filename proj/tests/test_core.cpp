#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>

#include "doctest.h"
#include "mcf/gen.hpp"
#include "mcf/instance.hpp"
#include "mcf/lp.hpp"
#include "mcf/sufficiency.hpp"

using namespace mcf;

namespace {

GraphPair pairOf(int n) { return GraphPair(Graph(n), Graph(n)); }

std::vector<int> randomSubset(std::mt19937_64& rng, int n) {
  std::vector<int> s;
  for (int v = 0; v < n; ++v)
    if (rng() & 1) s.push_back(v);
  return s;
}

std::vector<int> setMinus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  for (int v : a)
    if (std::find(b.begin(), b.end(), v) == b.end()) out.push_back(v);
  return out;
}

std::vector<int> setAnd(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  for (int v : a)
    if (std::find(b.begin(), b.end(), v) != b.end()) out.push_back(v);
  return out;
}

std::vector<int> setOr(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out = a;
  for (int v : b)
    if (std::find(a.begin(), a.end(), v) == a.end()) out.push_back(v);
  return out;
}

std::vector<int> complementOf(const std::vector<int>& a, int n) {
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (std::find(a.begin(), a.end(), v) == a.end()) out.push_back(v);
  return out;
}

}  // namespace

// ------------------------------------------------------------ rationals ----

TEST_CASE("rational construction and formatting") {
  CHECK(makeRat(6, 4) == Rat(3) / 2);
  CHECK(makeRat(-6, 4) == Rat(-3) / 2);
  CHECK(ratToString(Rat(3)) == "3");
  CHECK(ratToString(makeRat(-2, 5)) == "-2/5");
  CHECK(ratToString(makeRat(8, 6)) == "4/3");
}

TEST_CASE("rational parsing") {
  CHECK(*ratFromString("7") == Rat(7));
  CHECK(*ratFromString("7/3") == makeRat(7, 3));
  CHECK(*ratFromString("-2/5") == makeRat(-2, 5));
  CHECK(!ratFromString("1/0"));
  CHECK(!ratFromString(""));
  CHECK(!ratFromString("x"));
  CHECK(!ratFromString("1/2/3"));
  CHECK(!ratFromString("1.5"));
}

TEST_CASE("rational helpers") {
  CHECK(ratIsInteger(Rat(4)));
  CHECK(!ratIsInteger(makeRat(4, 3)));
  CHECK(ratFloorLong(makeRat(7, 3)) == 2);
  CHECK(ratFloorLong(Rat(5)) == 5);
  CHECK(ratAbs(makeRat(-2, 5)) == makeRat(2, 5));
}

// --------------------------------------------------------------- graphs ----

TEST_CASE("graph construction rejects bad edges") {
  Graph g(3);
  g.addEdge(0, 1);
  CHECK_THROWS_AS(g.addEdge(1, 1), ContractError);
  CHECK_THROWS_AS(g.addEdge(0, 9), ContractError);
  CHECK_THROWS_AS(Graph(-1), ContractError);
}

TEST_CASE("graph adjacency basics") {
  Graph g(4);
  int e0 = g.addEdge(0, 1);
  g.addEdge(1, 2);
  g.addEdge(1, 2);  // parallel edges stay distinct
  CHECK(g.degree(1) == 3);
  CHECK(g.other(e0, 0) == 1);
  CHECK(g.other(e0, 1) == 0);
  CHECK(g.edges.size() == 3);
  CHECK(g.edgeByStableId(g.edges[1].id) == 1);
}

TEST_CASE("connectivity and blocks") {
  Graph path(3);
  path.addEdge(0, 1);
  path.addEdge(1, 2);
  CHECK(isConnected(path));
  CHECK(cutVertices(path) == std::vector<int>{1});
  CHECK(!isBiconnected(path));
  CHECK(bridgeEdges(path).size() == 2);

  Graph tri(3);
  tri.addEdge(0, 1);
  tri.addEdge(1, 2);
  tri.addEdge(2, 0);
  CHECK(isBiconnected(tri));
  CHECK(bridgeEdges(tri).empty());

  Graph single(2);
  single.addEdge(0, 1);
  CHECK(isBiconnected(single));  // a single edge counts

  Graph bowtie(5);
  bowtie.addEdge(0, 1);
  bowtie.addEdge(1, 2);
  bowtie.addEdge(2, 0);
  bowtie.addEdge(2, 3);
  bowtie.addEdge(3, 4);
  bowtie.addEdge(4, 2);
  CHECK(blocks(bowtie).size() == 2);

  Graph two(4);
  two.addEdge(0, 1);
  two.addEdge(2, 3);
  CHECK(!isConnected(two));
  auto comp = componentIds(two);
  CHECK(comp[0] == comp[1]);
  CHECK(comp[2] == comp[3]);
  CHECK(comp[0] != comp[2]);
}

// -------------------------------------------------------------- surplus ----

TEST_CASE("surplus oracle values") {
  Instance sp = spindleInstance(3);
  CHECK(surplus(sp, {}) == 0);
  // one rim vertex: 2 unit supply edges out, 2 unit rim demands out
  CHECK(surplus(sp, {2}) == 0);
  // a hub: 3 supply edges out, 1 hub demand out
  CHECK(surplus(sp, {0}) == 2);

  // thick-demand endpoint of the bad-K4 instance: two unit supply edges
  // against the demand of 2 — a tight cut
  Instance bk = badK4Instance();
  CHECK(surplus(bk, {1}) == 0);
  CHECK(surplus(bk, {4}) == 0);
}

TEST_CASE("surplus is symmetric under complement") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 200; ++it) {
    RandomInstanceOptions opt;
    opt.maxVertices = 9;
    Instance inst = randomSpInstance(rng(), opt);
    std::vector<int> side = randomSubset(rng, inst.vertexCount());
    CHECK(surplus(inst, side) == surplus(inst, complementOf(side, inst.vertexCount())));
  }
}

TEST_CASE("pairSurplus oracle values") {
  GraphPair pair = pairOf(2);
  pair.supply.addEdge(0, 1);
  Instance single(pair, {Rat(5)}, {});
  CHECK(pairSurplus(single, {0}, {1}) == 5);

  Instance sp = spindleInstance(3);
  CHECK(pairSurplus(sp, {0}, {2}) == 1);   // hub vs one rim vertex
  CHECK(pairSurplus(sp, {2}, {3}) == -1);  // two rim vertices: demand only
  CHECK_THROWS_AS(pairSurplus(sp, {0, 2}, {2}), ContractError);
}

TEST_CASE("pairSurplus against complement reproduces surplus") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 200; ++it) {
    RandomInstanceOptions opt;
    opt.maxVertices = 9;
    Instance inst = randomSpInstance(rng(), opt);
    std::vector<int> side = randomSubset(rng, inst.vertexCount());
    CHECK(pairSurplus(inst, side, complementOf(side, inst.vertexCount())) ==
          surplus(inst, side));
  }
}

TEST_CASE("surplus partition and union identities") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 400; ++it) {
    RandomInstanceOptions opt;
    opt.maxVertices = 10;
    Instance inst = randomSpInstance(rng(), opt);
    int n = inst.vertexCount();
    std::vector<int> a = randomSubset(rng, n), b = randomSubset(rng, n);

    // partition form: sigma(A) splits over any partition of the complement
    std::vector<int> rest = complementOf(a, n);
    std::vector<int> b1, b2;
    for (int v : rest) (rng() & 1 ? b1 : b2).push_back(v);
    CHECK(surplus(inst, a) == pairSurplus(inst, a, b1) + pairSurplus(inst, a, b2));

    // submodular-style exchange identities
    Rat lhsUnion = surplus(inst, setOr(a, b)) + surplus(inst, setAnd(a, b));
    Rat rhsUnion =
        surplus(inst, a) + surplus(inst, b) - 2 * pairSurplus(inst, setMinus(a, b), setMinus(b, a));
    CHECK(lhsUnion == rhsUnion);

    Rat lhsDiff = surplus(inst, setMinus(a, b)) + surplus(inst, setMinus(b, a));
    Rat rhsDiff = surplus(inst, a) + surplus(inst, b) -
                  2 * pairSurplus(inst, setAnd(a, b), complementOf(setOr(a, b), n));
    CHECK(lhsDiff == rhsDiff);

    // disjoint union
    std::vector<int> dA, dB;
    for (int v = 0; v < n; ++v) {
      unsigned r = unsigned(rng() % 3);
      if (r == 0) dA.push_back(v);
      if (r == 1) dB.push_back(v);
    }
    CHECK(surplus(inst, setOr(dA, dB)) ==
          surplus(inst, dA) + surplus(inst, dB) - 2 * pairSurplus(inst, dA, dB));
  }
}

// ----------------------------------------------------------- centrality ----

TEST_CASE("isCentral on a path") {
  GraphPair pair = pairOf(3);
  pair.supply.addEdge(0, 1);
  pair.supply.addEdge(1, 2);
  Instance inst(pair, {Rat(1), Rat(1)}, {});
  CHECK(isCentral(inst, {0}));
  CHECK(!isCentral(inst, {0, 2}));
  Instance sp = spindleInstance(3);
  CHECK(isCentral(sp, {0, 2}));  // hub plus one rim vertex
}

// ---------------------------------------------------------- minor steps ----

TEST_CASE("contracting the only edge leaves a single vertex") {
  GraphPair pair = pairOf(2);
  pair.supply.addEdge(0, 1, 7);
  GraphPair after = applyMinorStep(pair, {MinorOp::ContractSupply, 7});
  CHECK(after.vertexCount() == 1);
  CHECK(after.supply.edges.empty());
  CHECK(after.demand.edges.empty());
}

TEST_CASE("deleting a rim demand of the 3-spindle") {
  GraphPair sp = spindlePair(3);
  int id = sp.demand.edges[1].id;  // a rim-cycle demand
  GraphPair after = applyMinorStep(sp, {MinorOp::DeleteDemand, id});
  CHECK(after.demand.edges.size() == 3);
  CHECK(after.supply.edges.size() == 6);
}

TEST_CASE("contracting a hub-rim supply edge attaches rim demands to the hub") {
  GraphPair sp = spindlePair(3);
  int id = sp.supply.edges[0].id;  // edge (0,2): hub 0, rim vertex 2
  GraphPair after = applyMinorStep(sp, {MinorOp::ContractSupply, id});
  CHECK(after.vertexCount() == 4);

  // expected by hand: hub 0 absorbed rim vertex 2; edge (1,2) now (0,1)
  GraphPair expect = pairOf(4);
  expect.supply.addEdge(0, 1);  // former (1,2)
  expect.supply.addEdge(0, 2);  // (0,3)
  expect.supply.addEdge(1, 2);  // (1,3)
  expect.supply.addEdge(0, 3);  // (0,4)
  expect.supply.addEdge(1, 3);  // (1,4)
  expect.demand.addEdge(0, 1);  // hub demand
  expect.demand.addEdge(0, 2);  // rim demand (2,3)
  expect.demand.addEdge(2, 3);  // (3,4)
  expect.demand.addEdge(3, 0);  // (4,2)
  CHECK(canonicalForm(after) == canonicalForm(expect));
}

TEST_CASE("minor steps never grow the pair") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 200; ++it) {
    GraphPair pair = randomSpPair(rng(), 9, 5);
    std::vector<MinorStep> moves;
    for (const Edge& e : pair.supply.edges) {
      moves.push_back({MinorOp::ContractSupply, e.id});
      moves.push_back({MinorOp::DeleteSupply, e.id});
    }
    for (const Edge& e : pair.demand.edges) moves.push_back({MinorOp::DeleteDemand, e.id});
    if (moves.empty()) continue;
    MinorStep step = moves[rng() % moves.size()];
    GraphPair after = applyMinorStep(pair, step);
    CHECK(after.vertexCount() <= pair.vertexCount());
    CHECK(after.supply.edges.size() <= pair.supply.edges.size());
    CHECK(after.demand.edges.size() <= pair.demand.edges.size());
    if (step.op == MinorOp::ContractSupply)
      CHECK(after.vertexCount() == pair.vertexCount() - 1);
  }
}

TEST_CASE("missing minor targets are rejected") {
  GraphPair sp = spindlePair(3);
  CHECK_THROWS_AS(applyMinorStep(sp, {MinorOp::ContractSupply, 999}), ContractError);
  CHECK_THROWS_AS(applyMinorStep(sp, {MinorOp::DeleteDemand, 999}), ContractError);
}

// ------------------------------------------------------- canonical form ----

TEST_CASE("canonical form is a relabeling invariant") {
  GraphPair sp = spindlePair(3);
  std::mt19937_64 rng(23);
  std::vector<int> perm(sp.vertexCount());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = int(i);
  for (int round = 0; round < 5; ++round) {
    std::shuffle(perm.begin(), perm.end(), rng);
    GraphPair relabeled = pairOf(sp.vertexCount());
    for (const Edge& e : sp.supply.edges) relabeled.supply.addEdge(perm[e.u], perm[e.v]);
    for (const Edge& e : sp.demand.edges) relabeled.demand.addEdge(perm[e.u], perm[e.v]);
    CHECK(canonicalForm(relabeled) == canonicalForm(sp));
  }
}

TEST_CASE("canonical form separates different pairs") {
  CHECK(canonicalForm(spindlePair(3)) != canonicalForm(spindlePair(5)));
  CHECK(canonicalForm(spindlePair(3)) != canonicalForm(badK4Instance().pair));
}

TEST_CASE("canonical form guard") {
  GraphPair big = pairOf(kCanonicalFormMaxVertices + 1);
  for (int v = 0; v + 1 <= kCanonicalFormMaxVertices; ++v) big.supply.addEdge(v, v + 1);
  CHECK_THROWS_AS(canonicalForm(big), ContractError);
}

// --------------------------------------------------------- minor pullback ----

// Assign weights on a minor, pull them back (copied on surviving edges, zero
// on deleted, a large constant on contracted): congestion can only drop
// toward the minor.
TEST_CASE("pullback congestion dominates the minor's congestion") {
  std::mt19937_64 rng(29);
  int done = 0;
  for (unsigned long long seed = 1; done < 60; ++seed) {
    GraphPair pair = randomSpPair(seed, 7, 3);
    if (pair.demand.edges.empty()) continue;

    std::vector<MinorStep> steps;
    GraphPair cur = pair;
    int wanted = 1 + int(rng() % 3);
    for (int s = 0; s < wanted; ++s) {
      std::vector<MinorStep> moves;
      for (const Edge& e : cur.supply.edges) {
        if (cur.supply.edges.size() > 1) moves.push_back({MinorOp::ContractSupply, e.id});
        moves.push_back({MinorOp::DeleteSupply, e.id});
      }
      for (const Edge& e : cur.demand.edges) moves.push_back({MinorOp::DeleteDemand, e.id});
      if (moves.empty()) break;
      MinorStep step = moves[rng() % moves.size()];
      steps.push_back(step);
      cur = applyMinorStep(cur, step);
    }
    if (cur.demand.edges.empty() || !isConnected(cur.supply)) continue;
    bool reachable = true;  // every demand in the minor must be routable at all
    for (const Edge& d : cur.demand.edges) {
      auto comp = componentIds(cur.supply);
      if (comp[d.u] != comp[d.v]) reachable = false;
    }
    if (!reachable) continue;

    std::vector<Rat> minorCaps, minorDems;
    Rat totalDem(0);
    for (size_t e = 0; e < cur.supply.edges.size(); ++e)
      minorCaps.push_back(Rat(1 + int(rng() % 3)));
    for (size_t d = 0; d < cur.demand.edges.size(); ++d) {
      minorDems.push_back(Rat(1 + int(rng() % 2)));
      totalDem += minorDems.back();
    }
    Instance minorInst(cur, minorCaps, minorDems);

    Rat big = totalDem + 1;
    std::vector<Rat> caps, dems;
    for (const Edge& e : pair.supply.edges) {
      int idx = cur.supply.edgeByStableId(e.id);
      if (idx >= 0) {
        caps.push_back(minorCaps[idx]);
        continue;
      }
      bool deleted = false;
      for (const MinorStep& s : steps)
        if (s.op == MinorOp::DeleteSupply && s.edgeId == e.id) deleted = true;
      caps.push_back(deleted ? Rat(0) : big);
    }
    for (const Edge& e : pair.demand.edges) {
      int idx = cur.demand.edgeByStableId(e.id);
      dems.push_back(idx >= 0 ? minorDems[idx] : Rat(0));
    }

    Instance pulled(pair, caps, dems);
    CHECK(minCongestion(minorInst).congestion <= minCongestion(pulled).congestion);
    ++done;
  }
}
