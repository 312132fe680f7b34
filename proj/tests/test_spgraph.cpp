#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "mcf/gen.hpp"
#include "mcf/spgraph.hpp"

using namespace mcf;

namespace {

Graph k23() {
  Graph g(5);  // hubs 0,1; rim 2,3,4
  g.addEdge(0, 2);
  g.addEdge(1, 2);
  g.addEdge(0, 3);
  g.addEdge(1, 3);
  g.addEdge(0, 4);
  g.addEdge(1, 4);
  return g;
}

Graph k4() {
  Graph g(4);
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) g.addEdge(u, v);
  return g;
}

Graph cycle(int n) {
  Graph g(n);
  for (int v = 0; v < n; ++v) g.addEdge(v, (v + 1) % n);
  return g;
}

std::multiset<std::pair<int, int>> edgeMultiset(const Graph& g) {
  std::multiset<std::pair<int, int>> out;
  for (const Edge& e : g.edges) out.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  return out;
}

// random biconnected series-parallel graph via subdivide/duplicate growth
Graph randomBiconnectedSp(std::mt19937_64& rng, int maxVerts) {
  for (;;) {
    Graph g = randomSpPair(rng(), maxVerts, 1).supply;
    if (g.n >= 2 && isBiconnected(g)) return g;
  }
}

bool validK4Witness(const Graph& g, const K4Witness& w) {
  std::vector<int> owner(g.n, -1);
  for (int i = 0; i < 4; ++i) {
    if (w.branchSets[i].empty()) return false;
    for (int v : w.branchSets[i]) {
      if (owner[v] != -1) return false;  // overlapping branch sets
      owner[v] = i;
    }
    if (!inducesConnected(g, w.branchSets[i])) return false;
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      bool joined = false;
      for (const Edge& e : g.edges) {
        int a = owner[e.u], b = owner[e.v];
        if ((a == i && b == j) || (a == j && b == i)) joined = true;
      }
      if (!joined) return false;
    }
  return true;
}

}  // namespace

// ----------------------------------------------------------- recognition ----

TEST_CASE("single edge recognizes as a leaf tree") {
  Graph g(2);
  g.addEdge(0, 1);
  Recognition rec = recognizeSeriesParallel(g);
  REQUIRE(rec.status == Recognition::SeriesParallel);
  CHECK(rec.tree->nodes[rec.tree->root].kind == SpNode::Leaf);
  CHECK(rec.tree->evaluate(rec.tree->root) ==
        std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("K4 is refused with a valid witness") {
  Graph g = k4();
  Recognition rec = recognizeSeriesParallel(g);
  REQUIRE(rec.status == Recognition::HasK4Minor);
  CHECK(validK4Witness(g, *rec.k4));
}

TEST_CASE("K_{2,5} decomposes as parallel over series") {
  Graph g(7);
  for (int r = 2; r < 7; ++r) {
    g.addEdge(0, r);
    g.addEdge(1, r);
  }
  Recognition rec = recognizeSeriesParallel(g);
  REQUIRE(rec.status == Recognition::SeriesParallel);
  const SpTree& t = *rec.tree;
  CHECK(t.nodes[t.root].kind == SpNode::Parallel);
  // evaluation reproduces the graph's edge multiset
  auto pairs = t.evaluate(t.root);
  std::multiset<std::pair<int, int>> got(pairs.begin(), pairs.end());
  CHECK(got == edgeMultiset(g));
  // every internal series node joins two legs at a rim vertex
  int series = 0;
  for (const SpNode& n : t.nodes)
    if (n.kind == SpNode::Series) ++series;
  CHECK(series == 5);
}

TEST_CASE("a path reports its cut vertex") {
  Graph g(3);
  g.addEdge(0, 1);
  g.addEdge(1, 2);
  Recognition rec = recognizeSeriesParallel(g);
  CHECK(rec.status == Recognition::NotBiconnected);
  CHECK(rec.cutVertex == 1);
}

TEST_CASE("recognition round-trips random graphs") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 150; ++it) {
    Graph g = randomBiconnectedSp(rng, 10);
    Recognition rec = recognizeSeriesParallel(g);
    REQUIRE(rec.status == Recognition::SeriesParallel);
    auto pairs = rec.tree->evaluate(rec.tree->root);
    std::multiset<std::pair<int, int>> got(pairs.begin(), pairs.end());
    CHECK(got == edgeMultiset(g));
  }
}

// ------------------------------------------------------------ split pairs ----

TEST_CASE("split pair oracle on K_{2,3}") {
  Graph g = k23();
  CHECK(isSplitPair(g, 0, 1));   // the hubs
  CHECK(!isSplitPair(g, 2, 3));  // two rim vertices: adding the edge makes K4
}

TEST_CASE("allSplitPairs agrees with pairwise checks") {
  std::mt19937_64 rng(9);
  for (int it = 0; it < 25; ++it) {
    Graph g = randomBiconnectedSp(rng, 8);
    auto list = allSplitPairs(g);
    std::set<std::pair<int, int>> inList(list.begin(), list.end());
    for (int u = 0; u < g.n; ++u)
      for (int v = u + 1; v < g.n; ++v)
        CHECK(isSplitPair(g, u, v) == (inList.count({u, v}) > 0));
  }
}

// ------------------------------------------------------------ orientation ----

TEST_CASE("orient single edge and series path") {
  Graph e(2);
  e.addEdge(0, 1);
  Orientation o = orient(e, 0, 1);
  CHECK(o.edgeTail(0) == 0);
  CHECK(o.edgeHead(0) == 1);

  Graph p(3);
  p.addEdge(0, 1);
  p.addEdge(1, 2);
  // a bare path is not biconnected; orientation requires one block
  CHECK_THROWS_AS(orient(p, 0, 2), ContractError);

  Graph c = cycle(3);
  Orientation oc = orient(c, 0, 2);
  CHECK(oc.source == 0);
  CHECK(oc.sink == 2);
  for (int ei = 0; ei < int(c.edges.size()); ++ei) CHECK(oc.edgeTail(ei) != 2);
}

TEST_CASE("orient makes hubs source and sink on K_{2,3}") {
  Graph g = k23();
  Orientation o = orient(g, 0, 1);
  for (int e = 0; e < int(g.edges.size()); ++e) {
    if (g.edges[e].u == 0 || g.edges[e].v == 0) CHECK(o.edgeTail(e) == 0);
    if (g.edges[e].u == 1 || g.edges[e].v == 1) CHECK(o.edgeHead(e) == 1);
  }
}

TEST_CASE("orientation is acyclic with unique source and sink, and stable") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 120; ++it) {
    Graph g = randomBiconnectedSp(rng, 9);
    auto pairs = allSplitPairs(g);
    REQUIRE(!pairs.empty());
    auto [s, t] = pairs[rng() % pairs.size()];
    Orientation o = orient(g, s, t);
    CHECK(o.source == s);
    CHECK(o.sink == t);

    // out-degree zero only at the sink, in-degree zero only at the source
    std::vector<int> outDeg(g.n, 0), inDeg(g.n, 0);
    for (int e = 0; e < int(g.edges.size()); ++e) {
      ++outDeg[o.edgeTail(e)];
      ++inDeg[o.edgeHead(e)];
    }
    for (int v = 0; v < g.n; ++v) {
      CHECK((outDeg[v] == 0) == (v == t));
      CHECK((inDeg[v] == 0) == (v == s));
    }

    // acyclic: reaches() has no 2-cycles, and s reaches everything, all reach t
    for (int v = 0; v < g.n; ++v) {
      CHECK(reaches(o, s, v));
      CHECK(reaches(o, v, t));
      for (int w = 0; w < g.n; ++w)
        if (v != w) CHECK(!(reaches(o, v, w) && reaches(o, w, v)));
    }

    // idempotent: same split pair, same directions
    Orientation o2 = orient(g, s, t);
    CHECK(o.uToV == o2.uToV);
  }
}

// ------------------------------------------- compliance, terminals, brackets ----

TEST_CASE("compliance on K_{2,3}") {
  Orientation o = orient(k23(), 0, 1);
  CHECK(isCompliant(o, 0, 1));
  CHECK(isCompliant(o, 0, 3));  // adjacent
  CHECK(!isCompliant(o, 2, 3));
  CHECK(!isCompliant(o, 3, 4));
}

TEST_CASE("terminals of rim pairs are the hubs") {
  Orientation o = orient(k23(), 0, 1);
  auto [w, z] = terminalsOf(o, 2, 3);
  CHECK(w == 0);
  CHECK(z == 1);
  CHECK_THROWS_AS(terminalsOf(o, 0, 3), ContractError);  // compliant pair
}

TEST_CASE("terminals of two parallel two-edge paths") {
  Graph g(4);  // s=0, t=1, middles 2 and 3
  g.addEdge(0, 2);
  g.addEdge(2, 1);
  g.addEdge(0, 3);
  g.addEdge(3, 1);
  Orientation o = orient(g, 0, 1);
  auto [w, z] = terminalsOf(o, 2, 3);
  CHECK(w == 0);
  CHECK(z == 1);
}

TEST_CASE("nested diamond: inner non-compliant pair has the inner terminals") {
  // s=0 - w=1 - {x=2 || y=3} - z=4 - t=5
  Graph g(6);
  g.addEdge(0, 1);
  g.addEdge(1, 2);
  g.addEdge(2, 4);
  g.addEdge(1, 3);
  g.addEdge(3, 4);
  g.addEdge(4, 5);
  g.addEdge(0, 5);  // close the outer face to stay biconnected
  Orientation o = orient(g, 0, 5);
  auto [w, z] = terminalsOf(o, 2, 3);
  CHECK(w == 1);
  CHECK(z == 4);
  CHECK(brackets(o, {0, 5}, {1, 4}));
  CHECK(brackets(o, {1, 4}, {1, 2}));
  CHECK(!brackets(o, {1, 4}, {2, 3}));  // no path holds both branch middles
}

TEST_CASE("bracketing basics") {
  Orientation o = orient(k23(), 0, 1);
  CHECK(brackets(o, {0, 1}, {0, 2}));
  CHECK(brackets(o, {0, 2}, {0, 2}));  // non-strict
  CHECK(brackets(o, {0, 1}, {2, 1}));
}

TEST_CASE("bracketing is transitive") {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 40; ++it) {
    Graph g = randomBiconnectedSp(rng, 8);
    auto pairs = allSplitPairs(g);
    auto [s, t] = pairs[rng() % pairs.size()];
    Orientation o = orient(g, s, t);
    std::vector<std::pair<int, int>> all;
    for (int u = 0; u < g.n; ++u)
      for (int v = 0; v < g.n; ++v)
        if (u != v) all.push_back({u, v});
    for (auto a : all)
      for (auto b : all)
        for (auto c : all)
          if (brackets(o, a, b) && brackets(o, b, c)) CHECK(brackets(o, a, c));
  }
}

// ----------------------------------------------------------------- paths ----

TEST_CASE("path enumeration on K_{2,3}") {
  auto paths = allSimplePaths(k23(), 0, 1);
  CHECK(paths.size() == 3);
  for (const VPath& p : paths) {
    CHECK(p.verts.size() == 3);
    CHECK(p.verts.front() == 0);
    CHECK(p.verts.back() == 1);
  }
  // lexicographic middle vertices
  CHECK(paths[0].verts[1] == 2);
  CHECK(paths[1].verts[1] == 3);
  CHECK(paths[2].verts[1] == 4);
  CHECK_THROWS_AS(allSimplePaths(k23(), 0, 1, 2), ContractError);  // guard
}

TEST_CASE("pathThroughVertex oracles") {
  Graph tri = cycle(3);
  VPath p = pathThroughVertex(tri, 0, 2, 1);
  CHECK(p.verts == std::vector<int>{0, 1, 2});

  VPath q = pathThroughVertex(k23(), 0, 1, 3);
  CHECK(q.verts == std::vector<int>{0, 3, 1});

  Graph c6 = cycle(6);
  for (int via = 1; via <= 2; ++via) {
    VPath r = pathThroughVertex(c6, 0, 3, via);
    CHECK(r.verts == std::vector<int>{0, 1, 2, 3});
  }
  VPath r2 = pathThroughVertex(c6, 0, 3, 5);
  CHECK(r2.verts == std::vector<int>{0, 5, 4, 3});
}

TEST_CASE("pathThroughEdge picks the side containing the edge") {
  Graph c6 = cycle(6);
  int far = -1;
  for (int e = 0; e < int(c6.edges.size()); ++e)
    if ((c6.edges[e].u == 4 && c6.edges[e].v == 5) || (c6.edges[e].u == 5 && c6.edges[e].v == 4))
      far = e;
  VPath p = pathThroughEdge(c6, 0, 3, far);
  CHECK(p.verts == std::vector<int>{0, 5, 4, 3});
}

// -------------------------------------------------------------- embedding ----

namespace {

// V - E + F == 2 for a connected embedded graph
void checkEuler(const PlanarEmbedding& emb) {
  CHECK(int(emb.graph.n) - int(emb.graph.edges.size()) + int(emb.faces.size()) == 2);
}

bool onFace(const PlanarEmbedding& emb, int face, int v) {
  for (auto [e, tail] : emb.faces[face])
    if (tail == v) return true;
  return false;
}

}  // namespace

TEST_CASE("a cycle embeds with the cycle as outer face") {
  Graph c5 = cycle(5);
  PlanarEmbedding emb = embedWithOuterPair(c5, 0, 2);
  checkEuler(emb);
  CHECK(emb.faces.size() == 2);
  CHECK(onFace(emb, emb.outerFace, 0));
  CHECK(onFace(emb, emb.outerFace, 2));
  CHECK(emb.faces[emb.outerFace].size() == 5);
}

TEST_CASE("K_{2,3} embeds with nested hub paths") {
  PlanarEmbedding emb = embedWithOuterPair(k23(), 0, 1);
  checkEuler(emb);
  CHECK(emb.faces.size() == 3);
  // outer face: both hubs and exactly two of the rim vertices
  int rimOnOuter = 0;
  for (int r = 2; r <= 4; ++r)
    if (onFace(emb, emb.outerFace, r)) ++rimOnOuter;
  CHECK(onFace(emb, emb.outerFace, 0));
  CHECK(onFace(emb, emb.outerFace, 1));
  CHECK(rimOnOuter == 2);
}

TEST_CASE("embedding handles terminals of degree three and more") {
  // double diamond closed by a chord at the terminals
  Graph g(5);
  g.addEdge(0, 1);
  g.addEdge(1, 2);
  g.addEdge(0, 2);
  g.addEdge(2, 3);
  g.addEdge(3, 4);
  g.addEdge(2, 4);
  g.addEdge(0, 4);
  PlanarEmbedding emb = embedWithOuterPair(g, 0, 4);
  checkEuler(emb);
  CHECK(onFace(emb, emb.outerFace, 0));
  CHECK(onFace(emb, emb.outerFace, 4));
}

TEST_CASE("random embeddings satisfy Euler's formula with the pair outside") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 150; ++it) {
    Graph g = randomBiconnectedSp(rng, 10);
    auto pairs = allSplitPairs(g);
    auto [u, v] = pairs[rng() % pairs.size()];
    PlanarEmbedding emb = embedWithOuterPair(g, u, v);
    checkEuler(emb);
    CHECK(onFace(emb, emb.outerFace, u));
    CHECK(onFace(emb, emb.outerFace, v));
    // rotation system covers every dart exactly once across faces
    size_t darts = 0;
    for (const auto& f : emb.faces) darts += f.size();
    CHECK(darts == 2 * emb.graph.edges.size());
  }
}
