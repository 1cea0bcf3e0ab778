"""Exhaustive Hamiltonicity engine.

Exact subset dynamic programming (Held-Karp style reachability) decides
graphs up to 24 vertices; larger graphs get pruned backtracking that can
still certify non-hamiltonicity when it exhausts the search tree within
budget.  This module is the referee for every construction and the stand-in
for base cases the dispatch imports from prior work (cubic cyclic Haar
graphs, |S| <= 2 bicirculants, m <= 5, Haar component paths).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import BicirculantError, ComponentNotHamiltonian
from .graph import INNER, OUTER, BicirculantSpec, Vertex, edges, is_connected, u, v
from .witness import HamiltonWitness

DP_LIMIT = 24  # exact subset DP up to this many vertices


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int = 2_000_000
    time_limit: float = 30.0
    algorithm: str = "auto"  # "auto" | "dp" | "dfs"

    def scaled(self, factor: float) -> "SearchBudget":
        return SearchBudget(max(1, int(self.node_limit * factor)), self.time_limit * factor, self.algorithm)


@dataclass(frozen=True)
class SearchResult:
    kind: str  # "yes" | "no" | "inconclusive"
    witness: Optional[HamiltonWitness] = None


class AdjacencyView:
    """Dense-id adjacency with a Vertex translation table.

    Vertex ids are assigned in the order given; neighbor lists are sorted
    ascending so that searches are deterministic.
    """

    def __init__(self, vertices: Sequence[Vertex], edge_pairs):
        self.vertex_of = list(vertices)
        self.id_of = {x: i for i, x in enumerate(self.vertex_of)}
        if len(self.id_of) != len(self.vertex_of):
            raise BicirculantError("duplicate vertices in adjacency view")
        n = len(self.vertex_of)
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for x, y in edge_pairs:
            i, j = self.id_of[x], self.id_of[y]
            if i == j:
                raise BicirculantError(f"self-loop at {x}")
            nbrs[i].add(j)
            nbrs[j].add(i)
        self.neighbors = [tuple(sorted(s)) for s in nbrs]

    @property
    def n(self) -> int:
        return len(self.vertex_of)

    def to_sequence(self, ids) -> tuple[Vertex, ...]:
        return tuple(self.vertex_of[i] for i in ids)


def adjacency_from_spec(spec: BicirculantSpec) -> AdjacencyView:
    verts = [u(i) for i in range(spec.m)] + [v(i) for i in range(spec.m)]
    return AdjacencyView(verts, ((x, y) for x, y, _ in edges(spec)))


# ---------------------------------------------------------------------------
# exact DP engine

_dp_compiled = None


def _get_dp():
    global _dp_compiled
    if _dp_compiled is None:
        import numba

        @numba.njit(cache=True)
        def dp_cycle(nbr, n):  # nbr: uint32 adjacency masks
            size = np.int64(1) << n
            dp = np.zeros(size, dtype=np.uint32)
            dp[1] = np.uint32(1)
            for mask in range(1, size, 2):
                ends = dp[mask]
                if ends == np.uint32(0):
                    continue
                inv = np.uint32(0xFFFFFFFF) ^ np.uint32(mask)
                e = ends
                while e != np.uint32(0):
                    low = e & (np.uint32(0) - e)
                    e = e ^ low
                    last = 0
                    t = low
                    while t > np.uint32(1):
                        t = t >> np.uint32(1)
                        last += 1
                    c = nbr[last] & inv
                    while c != np.uint32(0):
                        lowc = c & (np.uint32(0) - c)
                        c = c ^ lowc
                        dp[mask | np.int64(lowc)] |= lowc
            return dp

        _dp_compiled = dp_cycle
    return _dp_compiled


def _dp_hamilton_cycle(adj: AdjacencyView) -> Optional[list[int]]:
    n = adj.n
    nbr = np.zeros(n, dtype=np.uint32)
    for i, ns in enumerate(adj.neighbors):
        m = 0
        for j in ns:
            m |= 1 << j
        nbr[i] = m
    dp = _get_dp()(nbr, n)
    full = (1 << n) - 1
    ends = int(dp[full]) & int(nbr[0])
    if ends == 0:
        return None
    cur = (ends & -ends).bit_length() - 1
    mask = full
    rev = [cur]
    while mask != 1:
        pmask = mask ^ (1 << cur)
        cand = int(dp[pmask]) & int(nbr[cur])
        cur = (cand & -cand).bit_length() - 1
        mask = pmask
        rev.append(cur)
    rev.reverse()
    return rev  # starts at 0, ends adjacent to 0


# ---------------------------------------------------------------------------
# pruned backtracking engine

class _DfsState:
    __slots__ = ("nodes", "deadline", "limit", "exhausted")

    def __init__(self, limit: int, seconds: float):
        self.nodes = 0
        self.limit = limit
        self.deadline = time.monotonic() + seconds
        self.exhausted = True  # falsified when budget interrupts the search


def _feasible(neighbors, visited, cur: int, n: int) -> bool:
    # every unvisited vertex still needs two potential connections among
    # the unvisited set, the path head, and the closing edge to vertex 0
    for w in range(n):
        if visited[w]:
            continue
        avail = 0
        for x in neighbors[w]:
            if not visited[x] or x == cur or x == 0:
                avail += 1
                if avail == 2:
                    break
        if avail < 2:
            return False
    return True


def _connected_rest(neighbors, visited, cur: int, n: int, remaining: int) -> bool:
    # the unvisited vertices must be reachable from the path head
    stack = [cur]
    seen = bytearray(n)
    seen[cur] = 1
    found = 0
    while stack:
        x = stack.pop()
        for y in neighbors[x]:
            if not seen[y] and not visited[y]:
                seen[y] = 1
                found += 1
                stack.append(y)
    return found == remaining


def _dfs_hamilton_cycle(adj: AdjacencyView, budget: SearchBudget) -> SearchResult:
    n = adj.n
    neighbors = adj.neighbors
    if n < 3:
        return SearchResult("no")
    for ns in neighbors:
        if len(ns) < 2:
            return SearchResult("no")
    st = _DfsState(budget.node_limit, budget.time_limit)
    visited = bytearray(n)
    visited[0] = 1
    path = [0]
    iters = [0]
    while path:
        st.nodes += 1
        if st.nodes > st.limit or (st.nodes % 1024 == 0 and time.monotonic() > st.deadline):
            return SearchResult("inconclusive")
        cur = path[-1]
        ns = neighbors[cur]
        advanced = False
        i = iters[-1]
        while i < len(ns):
            nxt = ns[i]
            i += 1
            if len(path) == n:
                if nxt == 0:
                    iters[-1] = i
                    return SearchResult("yes", HamiltonWitness.cycle(adj.to_sequence(path)))
                continue
            if visited[nxt]:
                continue
            visited[nxt] = 1
            remaining = n - len(path) - 1
            ok = True
            if remaining > 0:
                ok = _feasible(neighbors, visited, nxt, n)
                if ok and remaining > 1:
                    ok = _connected_rest(neighbors, visited, nxt, n, remaining)
            if ok:
                iters[-1] = i
                path.append(nxt)
                iters.append(0)
                advanced = True
                break
            visited[nxt] = 0
        if advanced:
            continue
        iters.pop()
        last = path.pop()
        visited[last] = 0
    return SearchResult("no")


# ---------------------------------------------------------------------------
# public operations

def hamilton_cycle(adj: AdjacencyView, budget: Optional[SearchBudget] = None) -> SearchResult:
    """A validated cycle witness, a definitive negative, or Inconclusive."""
    budget = budget or SearchBudget()
    n = adj.n
    if n < 3:
        return SearchResult("no")
    algo = budget.algorithm
    if algo == "dp" or (algo == "auto" and n <= DP_LIMIT):
        if n > DP_LIMIT:
            raise BicirculantError(f"subset DP capped at {DP_LIMIT} vertices, got {n}")
        ids = _dp_hamilton_cycle(adj)
        if ids is None:
            return SearchResult("no")
        return SearchResult("yes", HamiltonWitness.cycle(adj.to_sequence(ids)))
    return _dfs_hamilton_cycle(adj, budget)


def hamilton_path(
    adj: AdjacencyView,
    start: Vertex,
    end: Vertex,
    budget: Optional[SearchBudget] = None,
) -> SearchResult:
    """Endpoint-constrained Hamilton path via a virtual closing vertex."""
    if start == end:
        raise BicirculantError("hamilton_path needs distinct endpoints")
    virtual = Vertex("*", 0)
    pairs = [(adj.vertex_of[i], adj.vertex_of[j]) for i in range(adj.n) for j in adj.neighbors[i] if i < j]
    pairs.append((virtual, start))
    pairs.append((virtual, end))
    aug = AdjacencyView(list(adj.vertex_of) + [virtual], pairs)
    res = hamilton_cycle(aug, budget)
    if res.kind != "yes":
        return res
    seq = list(res.witness.sequence)
    k = seq.index(virtual)
    seq = seq[k + 1 :] + seq[:k]
    if seq[0] != start:
        seq.reverse()
    return SearchResult("yes", HamiltonWitness.path(seq))


def oracle_is_hamiltonian(spec: BicirculantSpec, budget: Optional[SearchBudget] = None) -> SearchResult:
    """Definitive for 2m <= 24 (subset DP); budgeted backtracking beyond."""
    if spec.m == 1:
        return SearchResult("no")  # K2-sized graphs have no cycle
    if not is_connected(spec):
        return SearchResult("no")
    return hamilton_cycle(adjacency_from_spec(spec), budget)


# ---------------------------------------------------------------------------
# Haar components and their structured cycles

def haar_component_vertices(m: int, S: Sequence[int], residue: int = 0) -> tuple[list[Vertex], int]:
    """Vertices of the H(m;S) component with the given residue class; 0 in S."""
    if 0 not in S:
        raise BicirculantError("haar components require the normalized spoke set")
    from .graph import gcd_all

    g = gcd_all(m, S)
    r = residue % g
    idx = range(r, m, g)
    return [u(x) for x in idx] + [v(x) for x in idx], g


def haar_component_view(m: int, S: Sequence[int], residue: int = 0) -> AdjacencyView:
    verts, _ = haar_component_vertices(m, S, residue)
    pairs = []
    vset = set(verts)
    for x in verts:
        if x.layer != OUTER:
            continue
        for c in S:
            w = v((x.index + c) % m)
            if w in vset:
                pairs.append((x, w))
    return AdjacencyView(verts, pairs)


def spoke_pair_cycle(m: int, S: Sequence[int], residue: int = 0) -> list[Vertex]:
    """The component of H(m;{0,c}) through u_residue, walked directly."""
    S = sorted(set(S))
    if len(S) != 2 or S[0] != 0:
        raise BicirculantError(f"spoke_pair_cycle needs S = {{0, c}}, got {S}")
    c = S[1]
    seq: list[Vertex] = []
    x = residue
    while True:
        seq.append(u(x))
        seq.append(v((x + c) % m))
        x = (x + c) % m
        if x == residue:
            break
    return seq


@dataclass(frozen=True)
class ComponentFrame:
    """A Haar component's Hamilton cycle with the designated vertices of the
    grid constructions.

    cycle[0] is the component's base outer vertex ("u_0"); cycle[1] is v_s,
    cycle[-1] is v_0, cycle[p_z] is u_z with v_h, v_k beside it.  For cells
    of size >= 8 the eight designated vertices are pairwise distinct.
    """

    cycle: tuple[Vertex, ...]
    p_z: int

    @property
    def size(self) -> int:
        return len(self.cycle)

    @property
    def u0(self) -> Vertex:
        return self.cycle[0]

    @property
    def vs(self) -> Vertex:
        return self.cycle[1]

    @property
    def ut(self) -> Vertex:
        return self.cycle[2]

    @property
    def vh(self) -> Vertex:
        return self.cycle[self.p_z - 1]

    @property
    def uz(self) -> Vertex:
        return self.cycle[self.p_z]

    @property
    def vk(self) -> Vertex:
        return self.cycle[self.p_z + 1]

    @property
    def u1(self) -> Vertex:
        return self.cycle[-2]

    @property
    def v0(self) -> Vertex:
        return self.cycle[-1]

    def path(self) -> list[Vertex]:
        """P = (v_s, u_t, ..., v_h, u_z, v_k, ..., u_1, v_0, u_0)."""
        return list(self.cycle[1:]) + [self.cycle[0]]


def frame_from_cycle(seq: Sequence[Vertex], base: Vertex, p_z: Optional[int] = None) -> ComponentFrame:
    seq = list(seq)
    k = seq.index(base)
    seq = seq[k:] + seq[:k]
    if seq[-1] < seq[1]:
        seq = [seq[0]] + list(reversed(seq[1:]))
    if p_z is None:
        p_z = 4 if len(seq) >= 8 else 2
    if p_z % 2 or not 0 < p_z < len(seq):
        raise BicirculantError(f"u_z must sit at a nonzero even position, got {p_z}")
    return ComponentFrame(tuple(seq), p_z)


def structured_component_path(
    m: int,
    S: Sequence[int],
    residue: int = 0,
    budget: Optional[SearchBudget] = None,
    p_z: Optional[int] = None,
) -> ComponentFrame:
    """Hamilton cycle of one H(m;S) component, framed for the constructions.

    |S| = 2 components are cycles and are walked directly; larger spoke sets
    go through the search engine (imported base case).
    """
    S = sorted(set(x % m for x in S))
    base = u(residue % m if S else residue)
    if len(S) < 2:
        raise ComponentNotHamiltonian("components of H(m;S) with |S| < 2 are spokes or vertices")
    if len(S) == 2 and S[0] == 0:
        return frame_from_cycle(spoke_pair_cycle(m, S, residue), base, p_z)
    view = haar_component_view(m, S, residue)
    res = hamilton_cycle(view, budget)
    if res.kind != "yes":
        raise ComponentNotHamiltonian(
            f"no Hamilton cycle certified for the H({m};{S}) component of {base} ({res.kind})"
        )
    return frame_from_cycle(res.witness.sequence, base, p_z)
