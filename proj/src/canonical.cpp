#include <algorithm>
#include <map>

#include "mcf/instance.hpp"

namespace mcf {

namespace {

// Canonical labeling by individualization-refinement over the two multiplicity
// matrices (supply, demand). Colors refine by per-class incidence sums; the
// first non-singleton cell branches, with vertices that are swappable by a
// transposition automorphism deduplicated to tame symmetric inputs.
struct Canonicalizer {
  int n;
  std::vector<std::vector<int>> sm, dm;
  std::string best;
  bool haveBest = false;

  Canonicalizer(const GraphPair& pair) : n(pair.vertexCount()) {
    sm.assign(n, std::vector<int>(n, 0));
    dm.assign(n, std::vector<int>(n, 0));
    for (const Edge& e : pair.supply.edges) {
      ++sm[e.u][e.v];
      ++sm[e.v][e.u];
    }
    for (const Edge& e : pair.demand.edges) {
      ++dm[e.u][e.v];
      ++dm[e.v][e.u];
    }
  }

  std::vector<int> refine(std::vector<int> color) const {
    while (true) {
      // signature: own color + (supply,demand) incidence into every class
      std::vector<std::vector<int>> sig(n);
      int classes = *std::max_element(color.begin(), color.end()) + 1;
      for (int v = 0; v < n; ++v) {
        sig[v].push_back(color[v]);
        std::vector<int> bucket(2 * classes, 0);
        for (int w = 0; w < n; ++w) {
          bucket[2 * color[w]] += sm[v][w];
          bucket[2 * color[w] + 1] += dm[v][w];
        }
        sig[v].insert(sig[v].end(), bucket.begin(), bucket.end());
      }
      std::map<std::vector<int>, int> order;
      for (int v = 0; v < n; ++v) order[sig[v]] = 0;
      int next = 0;
      for (auto& kv : order) kv.second = next++;
      std::vector<int> newColor(n);
      for (int v = 0; v < n; ++v) newColor[v] = order.at(sig[v]);
      if (newColor == color) return color;
      color = std::move(newColor);
    }
  }

  bool swappable(int x, int y) const {
    for (int v = 0; v < n; ++v) {
      if (v == x || v == y) continue;
      if (sm[x][v] != sm[y][v] || dm[x][v] != dm[y][v]) return false;
    }
    return true;
  }

  void emit(const std::vector<int>& color) {
    std::vector<int> orig(n);  // new label -> original vertex
    for (int v = 0; v < n; ++v) orig[color[v]] = v;
    std::string enc;
    enc.reserve(n * n + 1);
    enc.push_back(static_cast<char>(n));
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        enc.push_back(static_cast<char>(std::min(sm[orig[a]][orig[b]], 127)));
        enc.push_back(static_cast<char>(std::min(dm[orig[a]][orig[b]], 127)));
      }
    if (!haveBest || enc < best) {
      best = std::move(enc);
      haveBest = true;
    }
  }

  void descend(const std::vector<int>& color) {
    int cellColor = -1;
    std::vector<int> cell;
    for (int c = 0; c < n && cellColor == -1; ++c) {
      cell.clear();
      for (int v = 0; v < n; ++v)
        if (color[v] == c) cell.push_back(v);
      if (cell.size() > 1) cellColor = c;
    }
    if (cellColor == -1) {
      emit(color);
      return;
    }
    std::vector<int> tried;
    for (int v : cell) {
      bool dup = false;
      for (int u : tried)
        if (swappable(u, v)) {
          dup = true;
          break;
        }
      if (dup) continue;
      tried.push_back(v);
      std::vector<int> next = color;
      for (int w = 0; w < n; ++w)
        if (next[w] >= cellColor && w != v) ++next[w];
      descend(refine(next));
    }
  }

  std::string run() {
    if (n == 0) return std::string(1, '\0');
    descend(refine(std::vector<int>(n, 0)));
    return best;
  }
};

}  // namespace

std::string canonicalForm(const GraphPair& pair) {
  if (pair.vertexCount() > kCanonicalFormMaxVertices)
    throw ContractError("canonicalForm: vertex count " + std::to_string(pair.vertexCount()) +
                        " exceeds guard " + std::to_string(kCanonicalFormMaxVertices));
  return Canonicalizer(pair).run();
}

}  // namespace mcf
