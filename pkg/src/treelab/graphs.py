"""Weighted multigraphs with contraction/deletion surgery and tree utilities.

Vertices are integers 0..n-1. Edges carry a log-weight and a stable integer
id; parallel edges are kept as distinct entries, self-loops are dropped on
construction. Graphs are immutable after build: every mutating constructor
(`contract`, `delete`, weight assignment) returns a new value, so instances
can be shared freely across parallel trials.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

# Linear-domain strengths are only meaningful while exp(logw) stays well
# inside double range.
LINEAR_LOGW_CAP = 700.0


class DisjointSet:
    """Union-find with path halving and union by size."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n
        self.count = n

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        return True


class WeightedMultiGraph:
    """Immutable edge-list multigraph with log-domain weights.

    Attributes
    ----------
    n : vertex count
    u, v : int32 arrays of endpoints (u < v after normalisation)
    logw : float64 array of log-weights
    eid : int64 array of stable edge ids (survive contraction/deletion)
    edge_u : optional float64 array of auxiliary uniforms (set by weight
        laws that need them, e.g. the double-exponential law)
    meta : free-form dict (generator provenance such as box dimensions)
    """

    def __init__(self, n, u, v, logw, eid, edge_u=None, meta=None):
        self.n = int(n)
        self.u = np.ascontiguousarray(u, dtype=np.int32)
        self.v = np.ascontiguousarray(v, dtype=np.int32)
        self.logw = np.ascontiguousarray(logw, dtype=np.float64)
        self.eid = np.ascontiguousarray(eid, dtype=np.int64)
        self.edge_u = None if edge_u is None else np.ascontiguousarray(edge_u, dtype=np.float64)
        self.meta = dict(meta) if meta else {}
        for a in (self.u, self.v, self.logw, self.eid):
            a.flags.writeable = False
        if self.edge_u is not None:
            self.edge_u.flags.writeable = False
        self._cache = {}

    # -- construction ------------------------------------------------------

    @classmethod
    def build(cls, n, edges, mode="linear", meta=None):
        """Build a graph from (u, v, weight) triples.

        `mode="linear"` interprets the third entry as a strictly positive
        weight; `mode="log"` as a log-weight. Self-loops are dropped (they
        can belong to no spanning tree); their input positions still consume
        an edge id so ids always equal input positions.
        """
        if mode not in ("linear", "log"):
            raise ValueError(f"unknown weight mode {mode!r}")
        us, vs, ls, ids = [], [], [], []
        for pos, (a, b, w) in enumerate(edges):
            a, b = int(a), int(b)
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge {pos}: vertex out of range for n={n}")
            if mode == "linear":
                w = float(w)
                if not (w > 0.0) or math.isinf(w):
                    raise ValueError(f"edge {pos}: weight must be positive and finite, got {w}")
                lw = math.log(w)
            else:
                lw = float(w)
            if math.isnan(lw) or math.isinf(lw):
                raise ValueError(f"edge {pos}: non-finite log-weight {lw}")
            if a == b:
                continue
            if a > b:
                a, b = b, a
            us.append(a)
            vs.append(b)
            ls.append(lw)
            ids.append(pos)
        return cls(n, us, vs, ls, ids, meta=meta)

    def replace_logw(self, logw, edge_u=None):
        """Same topology and ids, fresh log-weights."""
        if len(logw) != self.num_edges:
            raise ValueError("log-weight array length mismatch")
        return WeightedMultiGraph(self.n, self.u, self.v, logw, self.eid,
                                  edge_u=edge_u, meta=self.meta)

    # -- basic views -------------------------------------------------------

    @property
    def num_edges(self):
        return len(self.eid)

    @property
    def linear_mode(self):
        """True when every weight is representable in linear doubles."""
        return self.num_edges == 0 or float(np.max(self.logw)) < LINEAR_LOGW_CAP

    @property
    def weights(self):
        """Linear-domain weights; only valid in linear mode."""
        if not self.linear_mode:
            raise ValueError("weights exceed the linear double range; use logw")
        return np.exp(self.logw)

    @property
    def strengths(self):
        """Per-vertex sum of incident weights (linear mode only)."""
        if "strengths" not in self._cache:
            w = self.weights
            s = np.zeros(self.n)
            np.add.at(s, self.u, w)
            np.add.at(s, self.v, w)
            self._cache["strengths"] = s
        return self._cache["strengths"]

    @property
    def log_strengths(self):
        """Per-vertex log-sum-exp of incident log-weights (-inf when isolated)."""
        if "log_strengths" not in self._cache:
            # vectorized LSE: shift by the per-vertex max, accumulate, re-shift
            shift = np.full(self.n, -np.inf)
            np.maximum.at(shift, self.u, self.logw)
            np.maximum.at(shift, self.v, self.logw)
            acc = np.zeros(self.n)
            with np.errstate(invalid="ignore"):
                np.add.at(acc, self.u, np.exp(self.logw - shift[self.u]))
                np.add.at(acc, self.v, np.exp(self.logw - shift[self.v]))
            out = np.where(acc > 0, shift + np.log(np.where(acc > 0, acc, 1.0)), -np.inf)
            self._cache["log_strengths"] = out
        return self._cache["log_strengths"]

    def incident(self, x):
        """Positions of edges incident to vertex x."""
        if "adjacency" not in self._cache:
            adj = [[] for _ in range(self.n)]
            for pos in range(self.num_edges):
                adj[self.u[pos]].append(pos)
                adj[self.v[pos]].append(pos)
            self._cache["adjacency"] = [np.array(a, dtype=np.int64) for a in adj]
        return self._cache["adjacency"][x]

    def degree(self, x):
        return len(self.incident(x))

    @property
    def max_degree(self):
        return max((self.degree(x) for x in range(self.n)), default=0)

    @property
    def connected(self):
        if "connected" not in self._cache:
            ds = DisjointSet(self.n)
            for a, b in zip(self.u, self.v):
                ds.union(int(a), int(b))
            self._cache["connected"] = ds.count == 1
        return self._cache["connected"]

    def positions_of(self, eids):
        """Map edge ids to positions in the edge arrays."""
        if "eid_index" not in self._cache:
            self._cache["eid_index"] = {int(e): i for i, e in enumerate(self.eid)}
        idx = self._cache["eid_index"]
        out = []
        for e in eids:
            if int(e) not in idx:
                raise KeyError(f"unknown edge id {e}")
            out.append(idx[int(e)])
        return np.array(sorted(out), dtype=np.int64)

    def canonical_form(self):
        """Hashable form for equality-up-to-edge-order comparisons."""
        rows = sorted(zip(self.u.tolist(), self.v.tolist(),
                          self.eid.tolist(), self.logw.tolist()))
        return (self.n, tuple(rows))


@dataclass
class ContractionMap:
    """Vertex quotient map produced by `contract`.

    forward maps original vertices to supervertices; blocks[s] lists the
    original vertices merged into supervertex s (each block is connected in
    the contracted edge set). Edge ids are preserved verbatim, so
    edge_provenance is the identity on surviving ids; dropped_self_loops
    records ids of non-contracted edges that became internal to a block.
    """

    forward: np.ndarray
    blocks: list
    edge_provenance: dict
    dropped_self_loops: list = field(default_factory=list)

    @property
    def max_block(self):
        return max((len(b) for b in self.blocks), default=0)


def contract(g, eids):
    """Quotient of g by the edge set `eids` (given as edge ids).

    Endpoints of each contracted edge are identified; edges internal to a
    block become self-loops and are dropped; parallel edges between blocks
    survive individually with their original ids. Supervertices are numbered
    by ascending minimal original vertex, so the result does not depend on
    the order of contraction.
    """
    positions = set(g.positions_of(eids).tolist())
    ds = DisjointSet(g.n)
    for pos in positions:
        ds.union(int(g.u[pos]), int(g.v[pos]))

    roots = sorted({ds.find(x) for x in range(g.n)})
    root_to_super = {r: s for s, r in enumerate(roots)}
    forward = np.array([root_to_super[ds.find(x)] for x in range(g.n)], dtype=np.int32)
    blocks = [[] for _ in roots]
    for x in range(g.n):
        blocks[forward[x]].append(x)

    us, vs, ls, ids = [], [], [], []
    dropped = []
    for pos in range(g.num_edges):
        if pos in positions:
            continue
        a, b = forward[g.u[pos]], forward[g.v[pos]]
        if a == b:
            dropped.append(int(g.eid[pos]))
            continue
        if a > b:
            a, b = b, a
        us.append(a)
        vs.append(b)
        ls.append(g.logw[pos])
        ids.append(g.eid[pos])
    edge_u = None
    if g.edge_u is not None:
        keep = [i for i in range(g.num_edges)
                if i not in positions and forward[g.u[i]] != forward[g.v[i]]]
        edge_u = g.edge_u[keep]
    gq = WeightedMultiGraph(len(roots), us, vs, ls, ids, edge_u=edge_u, meta=g.meta)
    cmap = ContractionMap(forward=forward, blocks=blocks,
                          edge_provenance={int(e): int(e) for e in ids},
                          dropped_self_loops=dropped)
    return gq, cmap


def delete(g, eids):
    """Edge-deleted graph g - eids; vertex set unchanged."""
    positions = set(g.positions_of(eids).tolist())
    keep = [i for i in range(g.num_edges) if i not in positions]
    edge_u = g.edge_u[keep] if g.edge_u is not None else None
    return WeightedMultiGraph(g.n, g.u[keep], g.v[keep], g.logw[keep],
                              g.eid[keep], edge_u=edge_u, meta=g.meta)


def components(g):
    """Connected components: per-vertex labels plus sizes sorted descending.

    Labels are assigned in order of first appearance by vertex index, so the
    output is deterministic.
    """
    ds = DisjointSet(g.n)
    for a, b in zip(g.u, g.v):
        ds.union(int(a), int(b))
    labels = np.empty(g.n, dtype=np.int64)
    lab = {}
    for x in range(g.n):
        r = ds.find(x)
        if r not in lab:
            lab[r] = len(lab)
        labels[x] = lab[r]
    sizes = np.bincount(labels)
    return labels, sorted(sizes.tolist(), reverse=True)


class SpanningTree:
    """A spanning tree of a host graph, rooted at vertex 0.

    Stores the edge ids, the parent array and the parent edge id per vertex
    (-1 at the root). Trees compare equal iff their edge-id sets coincide.
    """

    def __init__(self, n, eids, parent, parent_eid, endpoints):
        self.n = n
        self.eids = np.ascontiguousarray(sorted(int(e) for e in eids), dtype=np.int64)
        self.parent = np.ascontiguousarray(parent, dtype=np.int32)
        self.parent_eid = np.ascontiguousarray(parent_eid, dtype=np.int64)
        self._endpoints = endpoints  # list of (u, v) per tree edge

    @classmethod
    def from_positions(cls, g, positions):
        """Build from n-1 edge positions of g; validates tree-ness."""
        positions = [int(p) for p in positions]
        if len(positions) != g.n - 1:
            raise ValueError(f"need {g.n - 1} edges, got {len(positions)}")
        adj = [[] for _ in range(g.n)]
        for p in positions:
            a, b = int(g.u[p]), int(g.v[p])
            adj[a].append((b, p))
            adj[b].append((a, p))
        parent = np.full(g.n, -1, dtype=np.int32)
        parent_eid = np.full(g.n, -1, dtype=np.int64)
        seen = np.zeros(g.n, dtype=bool)
        seen[0] = True
        queue = deque([0])
        reached = 1
        while queue:
            x = queue.popleft()
            for y, p in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    parent_eid[y] = g.eid[p]
                    reached += 1
                    queue.append(y)
        if reached != g.n:
            raise ValueError("edge set does not span the graph")
        endpoints = [(int(g.u[p]), int(g.v[p])) for p in positions]
        return cls(g.n, [int(g.eid[p]) for p in positions], parent, parent_eid, endpoints)

    @property
    def key(self):
        """Canonical identity: the sorted tuple of edge ids."""
        return tuple(self.eids.tolist())

    def adjacency(self):
        adj = [[] for _ in range(self.n)]
        for a, b in self._endpoints:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def __eq__(self, other):
        return isinstance(other, SpanningTree) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


def _bfs_farthest(adj, start):
    dist = {start: 0}
    queue = deque([start])
    far, fd = start, 0
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                if dist[y] > fd:
                    far, fd = y, dist[y]
                queue.append(y)
    return far, fd


def tree_diameter(tree):
    """Exact hop diameter of a tree via two breadth-first sweeps."""
    if tree.n <= 1:
        return 0
    adj = tree.adjacency()
    a, _ = _bfs_farthest(adj, 0)
    _, d = _bfs_farthest(adj, a)
    return d


# -- edge-list file format -------------------------------------------------
# header line `n=<count> mode=<linear|log>`, then one `u<TAB>v<TAB>weight`
# per line, UTF-8, LF endings.

def write_edge_list(g, path):
    mode = "linear" if g.linear_mode else "log"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"n={g.n} mode={mode}\n")
        for a, b, lw in zip(g.u, g.v, g.logw):
            w = math.exp(lw) if mode == "linear" else lw
            fh.write(f"{a}\t{b}\t{w!r}\n")


def read_edge_list(path):
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        fields = dict(tok.split("=", 1) for tok in header.split())
        try:
            n = int(fields["n"])
            mode = fields["mode"]
        except KeyError as exc:
            raise ValueError(f"malformed edge-list header: {header!r}") from exc
        edges = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            a, b, w = line.split("\t")
            edges.append((int(a), int(b), float(w)))
    return WeightedMultiGraph.build(n, edges, mode=mode)
