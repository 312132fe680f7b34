#pragma once

#include "mcf/instance.hpp"

namespace mcf {

// Unit-weight spindle instance: K_{2,p} supply, rim cycle + hub pair demand.
Instance spindleInstance(int p);

// The classic K4-supported example: Eulerian, satisfies the cut condition,
// has no odd spindle minor, yet needs congestion above 1 — cut sufficiency
// genuinely requires the series-parallel hypothesis.
Instance badK4Instance();

// Two-terminal series-parallel supply grown from a single edge by random
// subdivide / duplicate steps (may contain cut vertices), plus 1..maxDemands
// random demands with distinct endpoints. Deterministic in the seed.
GraphPair randomSpPair(unsigned long long seed, int maxVertices, int maxDemands);

struct RandomInstanceOptions {
  int maxVertices = 8;
  int maxDemands = 4;
  long maxCapacity = 3;
  long maxDemandValue = 2;
  // Raise capacities along paths between odd-degree vertices until every
  // vertex has even total weight.
  bool forceEulerian = false;
  // While some cut is violated, add the (even, when Eulerian) deficit to one
  // supply edge crossing the worst cut. Monotone: no surplus ever drops.
  bool forceCutCondition = false;
};

// Random integral instance over randomSpPair(seed, ...), weights in
// [1, maxCapacity] and [1, maxDemandValue], then the requested repairs.
Instance randomSpInstance(unsigned long long seed, const RandomInstanceOptions& opt);

}  // namespace mcf
