#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <sstream>

#include "doctest.h"
#include "mcf/gen.hpp"
#include "mcf/io.hpp"
#include "mcf/routing.hpp"

using namespace mcf;

namespace {

bool sameInstance(const Instance& a, const Instance& b) {
  if (a.vertexCount() != b.vertexCount()) return false;
  if (a.capacities != b.capacities || a.demands != b.demands) return false;
  auto sameEdges = [](const Graph& x, const Graph& y) {
    if (x.edges.size() != y.edges.size()) return false;
    for (size_t i = 0; i < x.edges.size(); ++i)
      if (x.edges[i].u != y.edges[i].u || x.edges[i].v != y.edges[i].v) return false;
    return true;
  };
  return sameEdges(a.supply(), b.supply()) && sameEdges(a.demand(), b.demand());
}

int countLines(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0) ++n;
  return n;
}

}  // namespace

// ------------------------------------------------------------ round trips ----

TEST_CASE("write then read is the identity") {
  std::vector<Instance> fixtures = {spindleInstance(3), spindleInstance(5), spindleInstance(7),
                                    badK4Instance()};
  std::mt19937_64 rng(41);
  for (int it = 0; it < 30; ++it) {
    RandomInstanceOptions opt;
    opt.maxVertices = 9;
    fixtures.push_back(randomSpInstance(rng(), opt));
  }
  for (const Instance& inst : fixtures) {
    std::string text = instanceToString(inst);
    Instance back = readInstanceString(text);
    CHECK(sameInstance(inst, back));
    CHECK(instanceToString(back) == text);  // bit-exact second pass
  }
}

TEST_CASE("weights keep exact rational form") {
  GraphPair pair(Graph(2), Graph(2));
  pair.supply.addEdge(0, 1);
  pair.demand.addEdge(0, 1);
  Instance inst(pair, {makeRat(22, 7)}, {makeRat(1, 3)});
  std::string text = instanceToString(inst);
  CHECK(text.find("supply 0 1 22/7") != std::string::npos);
  CHECK(text.find("demand 0 1 1/3") != std::string::npos);
  Instance back = readInstanceString(text);
  CHECK(back.capacities[0] == makeRat(22, 7));
  CHECK(back.demands[0] == makeRat(1, 3));
}

TEST_CASE("comments, blank lines and ordering are tolerated") {
  Instance inst = readInstanceString(
      "# leading comment\n"
      "\n"
      "mcf-instance v1\n"
      "vertices 3   # inline comment\n"
      "demand 0 2 1\n"
      "supply 0 1 2\n"
      "\n"
      "supply 1 2 3/2\n");
  CHECK(inst.vertexCount() == 3);
  REQUIRE(inst.supply().edges.size() == 2);
  REQUIRE(inst.demand().edges.size() == 1);
  CHECK(inst.capacities[1] == makeRat(3, 2));
  CHECK(inst.demand().edges[0].v == 2);
}

// ------------------------------------------------------------ parse errors ----

TEST_CASE("parse errors carry their line") {
  auto lineOf = [](const std::string& text) {
    try {
      readInstanceString(text);
    } catch (const ParseError& e) {
      return e.line;
    }
    return -1;
  };
  CHECK(lineOf("") == 0);
  CHECK(lineOf("mcf-instance v2\n") == 1);
  CHECK(lineOf("instance v1\nvertices 2\n") == 1);
  CHECK(lineOf("mcf-instance v1\nsupply 0 1 1\n") == 2);           // edge before vertices
  CHECK(lineOf("mcf-instance v1\nvertices 2\nsupply 0 2 1\n") == 3);  // out of range
  CHECK(lineOf("mcf-instance v1\nvertices 2\nsupply 1 1 1\n") == 3);  // self loop
  CHECK(lineOf("mcf-instance v1\nvertices 2\nsupply 0 1 -2\n") == 3);  // negative
  CHECK(lineOf("mcf-instance v1\nvertices 2\nsupply 0 1 1/0\n") == 3);  // zero denominator
  CHECK(lineOf("mcf-instance v1\nvertices 2\nsupply 0 1 1.5\n") == 3);  // decimals rejected
  CHECK(lineOf("mcf-instance v1\nvertices 2\n\nwire 0 1 1\n") == 4);    // unknown directive
  CHECK(lineOf("mcf-instance v1\nvertices 2\nvertices 2\n") == 3);      // duplicate
  CHECK(lineOf("mcf-instance v1\nvertices 0\n") == 2);
  CHECK(lineOf("mcf-instance v1\n") == 0);  // vertices never arrived
  CHECK(lineOf("mcf-instance v1\nvertices 2\nsupply 0 1\n") == 3);  // missing weight

  try {
    readInstanceString("mcf-instance v1\nvertices 2\nsupply 0 1 x\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).rfind("line 3: ", 0) == 0);
  }
}

TEST_CASE("missing file is reported by name") {
  CHECK_THROWS_WITH_AS(readInstanceFile("/nonexistent/f.mcf"),
                       "cannot open '/nonexistent/f.mcf'", ContractError);
}

// -------------------------------------------------------------- documents ----

TEST_CASE("fixture documents have the advertised shape") {
  std::string sp3 = instanceToString(spindleInstance(3));
  CHECK(countLines(sp3, "vertices 5") == 1);
  CHECK(countLines(sp3, "supply ") == 6);
  CHECK(countLines(sp3, "demand ") == 4);

  std::string bk = instanceToString(badK4Instance());
  CHECK(countLines(bk, "vertices 6") == 1);
  CHECK(countLines(bk, "supply ") == 8);
  CHECK(countLines(bk, "demand ") == 3);
  CHECK(bk.find("demand 1 4 2") != std::string::npos);  // the thick demand
}

TEST_CASE("solution document lists flows and loads") {
  Instance inst = spindleInstance(4);
  MultiflowSolution sol = minCongestion(inst);
  std::ostringstream out;
  writeSolution(out, inst, sol);
  std::string text = out.str();
  CHECK(countLines(text, "mcf-solution v1") == 1);
  CHECK(countLines(text, "congestion ") == 1);
  CHECK(countLines(text, "flow ") == int(sol.flows.size()));
  CHECK(countLines(text, "load ") == int(inst.supply().edges.size()));
  // each flow line alternates vertex and edge indices: v e v e v has odd count
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("flow ", 0) != 0) continue;
    std::istringstream ls(line);
    std::string tok;
    int count = 0;
    while (ls >> tok) ++count;
    // flow + index + amount + alternating v e v ... v = 2k + 4 tokens
    CHECK(count >= 6);
    CHECK(count % 2 == 0);
  }
}

TEST_CASE("certificate documents") {
  {
    Instance inst = spindleInstance(3);
    Cut cut = cutOf(inst, {2});
    std::ostringstream out;
    writeCutCertificate(out, inst, cut);
    std::string text = out.str();
    CHECK(countLines(text, "kind violated-cut") == 1);
    CHECK(countLines(text, "surplus 0") == 1);
    CHECK(countLines(text, "side 2") == 1);
    CHECK(countLines(text, "crossing-supply") == 1);
    CHECK(countLines(text, "crossing-demand") == 1);
  }
  {
    auto w = findOddSpindleMinor(spindlePair(3));
    REQUIRE(w.has_value());
    std::ostringstream out;
    writeSpindleCertificate(out, *w);
    std::string text = out.str();
    CHECK(countLines(text, "kind odd-spindle") == 1);
    CHECK(countLines(text, "p 3") == 1);
    CHECK(countLines(text, "hub ") == 1);
    CHECK(countLines(text, "rim") == 1);
    CHECK(countLines(text, "step ") == int(w->steps.size()));
  }
  {
    EulerianReport rep;
    rep.eulerian = false;
    rep.integral = true;
    rep.oddVertex = 4;
    std::ostringstream out;
    writeParityCertificate(out, rep);
    CHECK(countLines(out.str(), "kind odd-parity") == 1);
    CHECK(countLines(out.str(), "vertex 4") == 1);

    rep.integral = false;
    std::ostringstream out2;
    writeParityCertificate(out2, rep);
    CHECK(countLines(out2.str(), "vertex") == 0);
    CHECK(out2.str().find("not all integral") != std::string::npos);
  }
  {
    std::ostringstream out;
    writeK4Certificate(out, {{0, 1}, {2}, {3, 4}, {5}});
    std::string text = out.str();
    CHECK(countLines(text, "kind k4-minor") == 1);
    CHECK(countLines(text, "branch") == 4);
    CHECK(countLines(text, "branch 0 1") == 1);
  }
}
