#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mcf/instance.hpp"
#include "mcf/rational.hpp"

namespace mcf {

// ----------------------------------------------------------- spindles ----

// The p-spindle pair: supply is K_{2,p} with hubs 0 and 1 and rim vertices
// 2..p+1; demand is the rim cycle 2-3-...-(p+1)-2 plus the hub edge 0-1.
GraphPair spindlePair(int p);

// Exact-shape recognition (no minor steps). Present iff the pair is a
// p-spindle for some p >= 3: hubs of supply degree p, rim of degree 2, each
// rim vertex adjacent to both hubs, demand = one hub edge + one rim cycle.
struct SpindleShape {
  int p = 0;
  int hubA = -1, hubB = -1;
  std::vector<int> rim;  // in cycle order, starting at the smallest label
};
std::optional<SpindleShape> spindleShape(const GraphPair& pair);

// Vertices carrying no supply or demand edge, removed with labels shifted.
// Minor steps never remove vertices, so every reduction is normalized this
// way before shape tests and memo lookups.
MinorResult dropIsolatedVertices(const GraphPair& pair);

// A replayable reduction: applying `steps` to the pair and dropping isolated
// vertices leaves exactly a p-spindle. Hub and rim labels refer to that
// final normalized pair.
struct SpindleWitness {
  int p = 0;
  std::vector<MinorStep> steps;
  int hubA = -1, hubB = -1;
  std::vector<int> rim;
};

// Replays the witness on the pair and re-derives the shape from scratch;
// throws ContractError unless the outcome is an odd spindle matching the
// recorded p, hubs and rim.
void checkSpindleWitness(const GraphPair& pair, const SpindleWitness& witness);

inline constexpr int kSpindleSearchMaxVertices = 14;

// Exhaustive search for an odd-spindle minor of the pair. Depth-first over
// single minor steps with canonical-form memoization of failed states,
// duplicate parallel edges removed as forced moves, and bridge deletions
// skipped (contraction reaches the same minors). Guarded by vertex count.
std::optional<SpindleWitness> findOddSpindleMinor(const GraphPair& pair);

// ------------------------------------------------------- block splitting ----

// Thrown where series-parallel supply is required but a K4 minor exists.
struct NotSeriesParallelError : ContractError {
  std::vector<std::vector<int>> branchSets;  // four connected, pairwise adjacent
  NotSeriesParallelError(const std::string& what, std::vector<std::vector<int>> bs)
      : ContractError(what), branchSets(std::move(bs)) {}
};

// One biconnected block of the supply graph, with every demand projected
// onto it: a demand whose block-tree path passes through the block
// contributes one fragment edge between its entry and exit vertices, and the
// fragment keeps the original demand's stable id.
struct BlockPair {
  GraphPair pair;
  std::vector<int> vertices;        // block label -> original vertex
  std::vector<int> supplyEdgeOrig;  // block supply edge -> original edge index
  std::vector<int> demandEdgeOrig;  // block fragment -> original demand index
};

struct BlockSplit {
  std::vector<BlockPair> blocks;
  // Per original demand edge: traversal as (block, entry, exit) triples in
  // order from the demand's u to its v, entry/exit in original labels. Empty
  // when the endpoints lie in different supply components (such a demand is
  // forced to zero by the cut condition and cannot join any spindle image,
  // whose supply side is connected).
  std::vector<std::vector<std::array<int, 3>>> demandRoutes;
};

BlockSplit splitIntoBlockPairs(const GraphPair& pair);

// ----------------------------------------------------------- the decision ----

struct SufficiencyVerdict {
  bool cutSufficient = false;
  std::optional<SpindleWitness> witness;  // present iff not cut sufficient
  std::string attestation;                // how the positive verdict was reached
};

// Every weighting satisfying the cut condition is routable iff no odd
// spindle is a minor of the pair. Requires series-parallel supply (throws
// NotSeriesParallelError otherwise). Decided block by block: a spindle's
// supply image is 2-connected and therefore lives inside one block, with
// demand edges entering as projected fragments; a found block witness is
// lifted back by first contracting every supply edge outside the block.
SufficiencyVerdict decideCutSufficiency(const GraphPair& pair);

// Weighting of the host pair that simulates the witness spindle: edges
// surviving into the spindle get weight 1, explicitly deleted edges get 0,
// and contracted or merged-away supply edges get a capacity larger than any
// load the spindle instance can induce. Satisfies the cut condition yet
// needs congestion > 1, because congestion can only drop toward the minor.
Instance pullbackInstance(const GraphPair& pair, const SpindleWitness& witness);

// ----------------------------------------------------- empirical validation ----

struct CrossValidationReport {
  bool ok = false;             // no contradiction with the verdict observed
  bool cutSufficient = false;  // the verdict that was validated
  int samplesChecked = 0;      // positive branch: instances driven to 1
  Rat pullbackCongestion;      // negative branch: congestion of the pullback
  std::string detail;
};

// Checks the structural verdict against the LP. Cut-sufficient pairs get
// `samples` random integral weightings built around a deliberately tight
// central cut (so minimum congestion is at least 1 by construction) and each
// must come out at exactly 1. Witnessed pairs get the pullback instance,
// which must satisfy the cut condition and exceed congestion 1.
CrossValidationReport crossValidateSufficiency(const GraphPair& pair, int samples,
                                               unsigned long long seed = 1);

}  // namespace mcf
