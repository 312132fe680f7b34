#pragma once

#include <optional>
#include <vector>

#include "mcf/cutcheck.hpp"
#include "mcf/instance.hpp"
#include "mcf/lp.hpp"
#include "mcf/spgraph.hpp"
#include "mcf/sufficiency.hpp"

namespace mcf {

// ------------------------------------------------- noncrossing machinery ----

// Side classification of every vertex relative to a u-v path whose endpoints
// lie on the outer face: the path plus its closure through the outer face
// splits the sphere, components of G minus the path land left or right.
// -1 = on the path, 0 = left, 1 = right. Consistency of the classification
// is asserted (every component must see one side only).
std::vector<int> sidesOfPath(const PlanarEmbedding& emb, const VPath& path);

// Whether q has vertices strictly on both sides of p.
bool pathsCross(const PlanarEmbedding& emb, const VPath& p, const VPath& q);

// The fractional flow of one demand as pairwise noncrossing simple paths,
// leftmost first: per-edge directed flow is accumulated (directed cycles
// cancelled), then paths peel off by always taking the first positive-flow
// dart after the arrival dart in rotation order. Total equals the demand's
// LP delivery; the noncrossing property is asserted pairwise before return.
std::vector<PathFlow> noncrossingDecomposition(const Instance& inst,
                                               const PlanarEmbedding& emb,
                                               const MultiflowSolution& frac,
                                               int demandEdge);

// One cycle-or-segment span of P1 ∪ Pk between consecutive shared vertices.
// sideOne follows P1 (the leftmost path), sideTwo follows Pk; for a shared
// segment the two coincide and only sideOne is stored.
struct ChainSpan {
  int a = -1, b = -1;
  bool isCycle = false;
  VPath sideOne;
  VPath sideTwo;
};

// Union structure of the outermost two paths: the ordered shared vertices
// u = common[0], ..., common[m] = v and the span between each consecutive
// pair. Every shared vertex is asserted to lie on all paths of the
// decomposition, in the same order.
struct CycleChain {
  std::vector<VPath> paths;
  std::vector<int> common;
  std::vector<ChainSpan> spans;
};

CycleChain buildCycleChain(const Instance& inst, const std::vector<VPath>& paths);

// --------------------------------------------------------- unit operations ----

// Record of replacing one unit of a demand by a chain of unit demands along
// the shared vertices: consuming the chain afterwards nets one routed unit.
struct PushLedger {
  int demandId = -1;          // stable id of the demand a unit was taken from
  std::vector<int> chain;     // u = q0, ..., qm = v
  std::vector<int> unitIds;   // stable ids of the created unit demands, empty
                              // when the chain is just {u, v}
};

// Moves one unit of the demand to the vertex w: demand drops by one (the
// edge disappears at zero) and unit demands (u,w), (w,v) appear with fresh
// stable ids. Requires every flow path of the demand in `frac` to pass
// through w — that is what keeps every cut's surplus from dropping by more
// than it can afford — and the cut condition is re-verified afterwards.
Instance pushUnit(const Instance& inst, int demandEdge, int w, const MultiflowSolution& frac);

// Full chain of pushes along the shared vertices of a cycle chain, with the
// per-push path condition checked against the suffix of every flow path.
struct PushOutcome {
  Instance instance;
  PushLedger ledger;
};
PushOutcome pushChain(const Instance& inst, int demandEdge, const CycleChain& chain);

// The routing path: spans are concatenated, each cycle contributing the side
// free of interior vertices linked to v (a vertex is linked when it reaches
// v in the supply graph minus the rest of the cycle). A cycle containing v,
// and a tie, both take sideOne — the leftmost side. At most one side can be
// linked-blocked; both blocked is a structural failure and throws.
VPath chooseSides(const Instance& inst, const CycleChain& chain, int v);

// Routes one unit along the path: every path edge loses one capacity (zero
// capacity edges disappear), the ledger's chain of unit demands — or one
// unit of the demand itself when the chain is trivial — is consumed, and the
// cut condition is re-verified unless `recheck` is false (property tests
// observe the parity bookkeeping on instances where the condition breaks).
Instance routeUnit(const Instance& inst, const VPath& path, const PushLedger& ledger,
                   bool recheck = true);

// ----------------------------------------------------------- the drivers ----

struct RoutingResult {
  enum Status { Routed, CutViolated, NotCutSufficient, NotEulerian };
  Status status = CutViolated;
  MultiflowSolution solution;             // Routed
  std::optional<Cut> violatedCut;         // CutViolated
  std::optional<SpindleWitness> spindle;  // NotCutSufficient
  EulerianReport parity;                  // NotEulerian (also non-integral input)
};

// Exact integral routing at congestion <= 1 for Eulerian instances with
// series-parallel supply satisfying the cut condition, refused with a
// certificate otherwise. Cut sufficiency is established once up front by
// minor search unless the caller vouches for it; the interior descent never
// re-searches, because pushing and routing only remove demand edges and
// spindle-freeness is closed under minors. Throws NotSeriesParallelError
// when the supply has a K4 minor. The returned solution is re-verified
// independently (integrality, capacities, exact delivery) before return.
RoutingResult solveIntegral(const Instance& inst, bool assumeCutSufficient = false,
                            bool bulkFloor = false);

// Half-integral routing for non-Eulerian integral instances: weights are
// doubled (always Eulerian), routed integrally, and halved back.
RoutingResult solveHalfIntegral(const Instance& inst, bool assumeCutSufficient = false);

// Independent audit of a routing: every amount is a positive multiple of the
// granularity, paths are well-formed and connect their demand's endpoints,
// every demand is delivered exactly, loads match the flows and fit within
// capacities. Throws ContractError on any failure.
void verifyRouting(const Instance& inst, const MultiflowSolution& sol, const Rat& granularity);

}  // namespace mcf
