#include <algorithm>
#include <functional>
#include <map>

#include "mcf/spgraph.hpp"

namespace mcf {

int PlanarEmbedding::faceOf(int edge, int tail) const {
  for (size_t f = 0; f < faces.size(); ++f)
    for (auto& dart : faces[f])
      if (dart.first == edge && dart.second == tail) return static_cast<int>(f);
  throw ContractError("faceOf: dart not present");
}

namespace {

void traceFaces(PlanarEmbedding& emb) {
  const Graph& g = emb.graph;
  // position of each edge in each endpoint's rotation
  std::map<std::pair<int, int>, int> pos;  // (vertex, edge) -> index
  for (int v = 0; v < g.n; ++v)
    for (size_t i = 0; i < emb.rotation[v].size(); ++i) pos[{v, emb.rotation[v][i]}] = (int)i;
  std::map<std::pair<int, int>, char> seen;  // dart (edge, tail)
  for (size_t e = 0; e < g.edges.size(); ++e)
    for (int side = 0; side < 2; ++side) {
      int tail = side == 0 ? g.edges[e].u : g.edges[e].v;
      if (seen.count({(int)e, tail})) continue;
      std::vector<std::pair<int, int>> face;
      int ce = (int)e, ct = tail;
      while (!seen.count({ce, ct})) {
        seen[{ce, ct}] = 1;
        face.emplace_back(ce, ct);
        int head = g.other(ce, ct);
        int p = pos.at({head, ce});
        int ne = emb.rotation[head][(p + 1) % emb.rotation[head].size()];
        ce = ne;
        ct = head;
      }
      emb.faces.push_back(std::move(face));
    }
}

struct TileEmb {
  std::vector<int> top, bottom;        // linear stub lists at the two terminals
  std::vector<int> lverts, rverts;     // boundary vertices, terminal to terminal
};

struct Embedder {
  const SpTree& tree;
  int u, v;
  std::vector<unsigned long long> mask;           // node -> tile vertex set
  std::map<int, bool> swapChildren;               // parallel node -> reverse order
  std::vector<std::vector<int>> rot;

  Embedder(const SpTree& t, int u, int v) : tree(t), u(u), v(v) {
    mask.resize(tree.nodes.size());
    std::function<unsigned long long(int)> fill = [&](int nd) -> unsigned long long {
      const SpNode& n = tree.nodes[nd];
      if (n.kind == SpNode::Leaf) {
        const Edge& e = tree.graph.edges[n.edge];
        return mask[nd] = (1ULL << e.u) | (1ULL << e.v);
      }
      return mask[nd] = fill(n.left) | fill(n.right);
    };
    fill(tree.root);
    rot.assign(tree.graph.n, {});
  }

  bool inTile(int nd, int w) const { return (mask[nd] >> w) & 1ULL; }
  bool internalTo(int nd, int w) const {
    const SpNode& n = tree.nodes[nd];
    return inTile(nd, w) && w != n.a && w != n.b;
  }

  // Arrange descendants so w ends on the requested boundary side of this tile.
  // side: 0 = left, 1 = right.
  void place(int nd, int w, int side) {
    const SpNode& n = tree.nodes[nd];
    if (n.kind == SpNode::Leaf) throw ContractError("embed: placement reached a leaf");
    if (n.kind == SpNode::Series) {
      if (w == n.middle) return;  // middles sit on both boundary paths
      place(inTile(n.left, w) ? n.left : n.right, w, side);
      return;
    }
    int child = internalTo(n.left, w) ? n.left : n.right;
    if (!internalTo(child, w)) throw ContractError("embed: placement target not internal");
    // left side wants the child leftmost, right side rightmost
    swapChildren[nd] = (side == 0) ? (child == n.right) : (child == n.left);
    place(child, w, side);
  }

  // Arrange so u and v share a face of this tile's sub-embedding.
  // Returns 0 if an internal face already has both, 1 if both sit on the left
  // boundary path, 2 if both on the right.
  int share(int nd) {
    const SpNode& n = tree.nodes[nd];
    if (n.kind == SpNode::Leaf) throw ContractError("embed: share reached a leaf");
    if (n.kind == SpNode::Series) {
      if (u == n.middle || v == n.middle) {
        int other = (u == n.middle) ? v : u;
        place(inTile(n.left, other) && internalTo(n.left, other) ? n.left : n.right, other, 0);
        return 1;  // the middle is on both boundary paths
      }
      bool uL = inTile(n.left, u);
      bool vL = inTile(n.left, v);
      if (uL == vL) {
        int child = uL ? n.left : n.right;
        return share(child);
      }
      place(uL ? n.left : n.right, u, 0);
      place(uL ? n.right : n.left, v, 0);
      return 1;
    }
    // parallel
    bool uLeft = internalTo(n.left, u);
    bool vLeft = internalTo(n.left, v);
    bool uRight = internalTo(n.right, u);
    bool vRight = internalTo(n.right, v);
    if ((uLeft && vLeft) || (uRight && vRight)) {
      int child = uLeft ? n.left : n.right;
      int r = share(child);
      if (r == 0) return 0;
      // expose the achieved boundary of `child` to the gap between the two
      // children: that gap is an internal face of this tile
      int other = (child == n.left) ? n.right : n.left;
      (void)other;
      if (r == 1)
        swapChildren[nd] = (child == n.left);  // child second, its left faces the gap
      else
        swapChildren[nd] = (child == n.right);  // child first, its right faces the gap
      return 0;
    }
    // different children (attachments never call share)
    int uChild = uLeft ? n.left : n.right;
    int vChild = vLeft ? n.left : n.right;
    if (uChild == vChild) throw ContractError("embed: share bookkeeping is inconsistent");
    // order u's child first: u on its right boundary, v on the next child's left
    swapChildren[nd] = (uChild == n.right);
    place(uChild, u, 1);
    place(vChild, v, 0);
    return 0;
  }

  TileEmb build(int nd, int top, int bottom) {
    const SpNode& n = tree.nodes[nd];
    if (n.kind == SpNode::Leaf) {
      TileEmb t;
      t.top = {n.edge};
      t.bottom = {n.edge};
      t.lverts = {top, bottom};
      t.rverts = {top, bottom};
      return t;
    }
    if (n.kind == SpNode::Series) {
      int topChild = inTile(n.left, top) ? n.left : n.right;
      int botChild = topChild == n.left ? n.right : n.left;
      TileEmb t1 = build(topChild, top, n.middle);
      TileEmb t2 = build(botChild, n.middle, bottom);
      // clockwise around the middle: the upper tile's stubs left to right,
      // then the lower tile's right to left
      rot[n.middle] = t1.bottom;
      rot[n.middle].insert(rot[n.middle].end(), t2.top.rbegin(), t2.top.rend());
      TileEmb t;
      t.top = std::move(t1.top);
      t.bottom = std::move(t2.bottom);
      t.lverts = std::move(t1.lverts);
      t.lverts.insert(t.lverts.end(), t2.lverts.begin() + 1, t2.lverts.end());
      t.rverts = std::move(t1.rverts);
      t.rverts.insert(t.rverts.end(), t2.rverts.begin() + 1, t2.rverts.end());
      return t;
    }
    int first = n.left, second = n.right;
    auto it = swapChildren.find(nd);
    if (it != swapChildren.end() && it->second) std::swap(first, second);
    TileEmb tl = build(first, top, bottom);
    TileEmb tr = build(second, top, bottom);
    TileEmb t;
    t.top = std::move(tl.top);
    t.top.insert(t.top.end(), tr.top.begin(), tr.top.end());
    t.bottom = std::move(tl.bottom);
    t.bottom.insert(t.bottom.end(), tr.bottom.begin(), tr.bottom.end());
    t.lverts = std::move(tl.lverts);
    t.rverts = std::move(tr.rverts);
    return t;
  }
};

}  // namespace

PlanarEmbedding embedWithOuterPair(const Graph& g, int u, int v) {
  g.checkVertex(u, "embedWithOuterPair");
  g.checkVertex(v, "embedWithOuterPair");
  if (g.n > 63) throw ContractError("embedWithOuterPair: vertex count exceeds desk-scale guard");
  Recognition rec = recognizeSeriesParallel(g);
  if (rec.status != Recognition::SeriesParallel)
    throw ContractError("embedWithOuterPair: graph must be biconnected series-parallel");
  const SpTree& tree = *rec.tree;
  Embedder emb(tree, u, v);

  int s = tree.nodes[tree.root].a, t = tree.nodes[tree.root].b;
  bool uInternal = (u != s && u != t);
  bool vInternal = (v != s && v != t);
  if (uInternal && vInternal) {
    if (u == v)
      emb.place(tree.root, u, 0);
    else
      emb.share(tree.root);
  } else if (uInternal) {
    emb.place(tree.root, u, 0);
  } else if (vInternal) {
    emb.place(tree.root, v, 0);
  }
  TileEmb whole = emb.build(tree.root, s, t);
  // stubs of the top terminal point down into the tile, so clockwise order
  // is the drawn left-to-right order reversed; the bottom terminal's stubs
  // point up and keep it
  emb.rot[s].assign(whole.top.rbegin(), whole.top.rend());
  emb.rot[t] = whole.bottom;

  PlanarEmbedding out;
  out.graph = g;
  out.rotation = std::move(emb.rot);
  traceFaces(out);

  // Planarity sanity: V - E + F must be 2 for a connected rotation system.
  long euler = (long)g.n - (long)g.edges.size() + (long)out.faces.size();
  if (euler != 2)
    throw ContractError("embedWithOuterPair: rotation system is not planar (Euler " +
                        std::to_string(euler) + "); composition is buggy");

  for (size_t f = 0; f < out.faces.size(); ++f) {
    bool hasU = false, hasV = false;
    for (auto& dart : out.faces[f]) {
      hasU |= dart.second == u;
      hasV |= dart.second == v;
    }
    if (hasU && hasV) {
      out.outerFace = static_cast<int>(f);
      break;
    }
  }
  if (out.outerFace < 0)
    throw ContractError("embedWithOuterPair: no face exposes both vertices; planner is buggy");
  return out;
}

}  // namespace mcf
