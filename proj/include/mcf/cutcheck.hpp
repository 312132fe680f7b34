#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "mcf/instance.hpp"
#include "mcf/spgraph.hpp"

namespace mcf {

// Checking central cuts suffices: a violated cut decomposes into central
// pieces, one of which is violated at least as badly.
enum class CutEngine { Auto, BruteForce, SpTreeDp };

struct CutReport {
  bool satisfied = false;
  Rat minSurplus;
  Cut worstCut;  // a central cut attaining the minimum
};

inline constexpr int kBruteForceCutGuard = 20;

// Exact minimum surplus over central cuts. BruteForce enumerates vertex
// subsets (guarded at 20 vertices) and breaks ties toward the
// lexicographically smallest side containing vertex 0. SpTreeDp runs a
// boundary-state dynamic program over the supply decomposition tree and
// requires biconnected series-parallel supply; its witness cut is exact but
// tie-breaking among equal-surplus cuts is unspecified.
CutReport checkCutCondition(const Instance& inst, CutEngine engine = CutEngine::Auto);

// Component-tolerant wrapper. A positive demand between supply components is
// an immediate violation (its component's side crosses no supply edge);
// otherwise every component is checked on its own and the worst cut, lifted
// back to original labels, is reported.
CutReport checkCutConditionSplit(const Instance& inst, CutEngine engine = CutEngine::Auto);

struct EulerianReport {
  bool eulerian = false;
  bool integral = true;  // all capacities and demands integers
  int oddVertex = -1;    // vertex with odd incident weight total, if any
};

// Integer weights with every vertex's incident capacity+demand total even;
// equivalently every cut surplus is even.
EulerianReport checkEulerian(const Instance& inst);

// Central cuts with surplus exactly zero, as side vertex lists normalized to
// the lexicographically smaller side. Brute-force enumeration, guarded.
std::vector<Cut> enumerateTightCentralCuts(const Instance& inst);

// Central tight cuts avoiding both endpoints of the given demand edge; the
// returned side is the one missing the endpoints.
std::vector<std::vector<int>> bubblesFor(const Instance& inst, int demandEdge);

struct CoverageReport {
  bool covered = false;
  // A path crossing no bubble, when not covered.
  std::optional<VPath> uncoveredPath;
  // A tight central cut the witness path crosses more than once, when one
  // exists. Such a cut separates the demand endpoints (a same-side tight cut
  // crossed by the path would yield a bubble), so the count is odd and >= 3.
  std::optional<std::vector<int>> multiCrossedTightCut;
};

// Whether every path between the demand's endpoints crosses some bubble.
CoverageReport isCoveredByBubbles(const Instance& inst, int demandEdge);

// Shared enumeration: invokes fn(sideMask) for every proper nonempty subset
// containing vertex 0 (each bipartition once). Guarded at 20 vertices.
void forEachHalfSubset(int n, const std::function<void(unsigned)>& fn);

// All central cuts of the supply graph as side masks containing vertex 0,
// ascending. Guarded at 20 vertices.
std::vector<unsigned> centralCutMasks(const Graph& supply);

}  // namespace mcf
