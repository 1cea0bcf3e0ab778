"""Constructive Hamilton-cycle strategies for B(m; a, S, b) subgraphs.

Everything here assembles explicit witnesses from per-component cycles of
H(m;S): rectangular-grid stitching, the short-row extension (cycle for
rho > 0, endpoint path for rho = 0), the 2-hooked assembly over a removed
spoke type, ladder constructions for congruent outer/inner types, and
brick products with a boundary matching.  Each operation returns a
HamiltonWitness; shapes are re-walked during assembly so a malformed edge
set can never escape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import (
    BicirculantError,
    ComponentNotHamiltonian,
    MissingInnerEdge,
    OddN,
    OutOfGrid,
    PreconditionViolated,
)
from .graph import (
    INNER,
    OUTER,
    BicirculantSpec,
    Vertex,
    gcd_all,
    u,
    v,
)
from .grid import EdgeSetShape, GridBuilder, grid_cycle_edges, grid_path_edges
from .representation import GridRepresentation, nonuniform_params
from .solver import ComponentFrame, SearchBudget, structured_component_path
from .witness import HamiltonWitness


def _spec_pair(spec: BicirculantSpec) -> tuple[int, int]:
    """The (a, b) of a two-type spec B(m; {a,-a}, S, {b,-b})."""
    if len(spec.R) not in (1, 2) or len(spec.T) not in (1, 2):
        raise PreconditionViolated(f"not a B(m;a,S,b) subgraph: R={spec.R}, T={spec.T}")
    return min(spec.R), min(spec.T)


def _component_frame(
    spec: BicirculantSpec, budget: Optional[SearchBudget], residue: int = 0
) -> ComponentFrame:
    return structured_component_path(spec.m, spec.S, residue=residue, budget=budget)


# ---------------------------------------------------------------------------
# grid constructions

def uniform_grid_cycle(
    spec: BicirculantSpec,
    rep: GridRepresentation,
    budget: Optional[SearchBudget] = None,
    frame: Optional[ComponentFrame] = None,
) -> HamiltonWitness:
    """Hamilton cycle from a (lam, mu)-uniform representation with mu >= 1.

    The cycle is the join of two serpentine paths through the component
    grid, joined at u^{0,0}_0 u^{0,1}_0 and u^{0,lam-1}_alpha u^{0,lam}_alpha;
    it uses no outer edge between the first and last vertical component and
    no inner wrap edge inside a column.
    """
    if rep.kind != "uniform":
        raise PreconditionViolated("uniform_grid_cycle needs a uniform representation")
    if rep.mu < 1:
        raise PreconditionViolated("single-row uniform representations have no grid cycle")
    if rep.a is None:
        raise PreconditionViolated("representation has no outer type; run grid_assign")
    frame = frame or _component_frame(spec, budget)
    gb = grid_cycle_edges(spec.m, rep.a, rep.b, frame, rows=rep.mu + 1, lam=rep.lam)
    seq = gb.shape.cycle_sequence()
    note = _grid_note(gb, rep.lam, rep.mu + 1, None)
    return HamiltonWitness.cycle(seq, note=note)


def grid_subrectangle_cycle(
    spec: BicirculantSpec,
    rep: GridRepresentation,
    i0: int,
    j0: int,
    lam2: int,
    mu2: int,
    budget: Optional[SearchBudget] = None,
    frame: Optional[ComponentFrame] = None,
) -> HamiltonWitness:
    """Hamilton cycle of the subgraph induced by the cells
    (i0..i0+mu2) x (j0..j0+lam2), using only inherited grid adjacencies."""
    if mu2 < 1 or lam2 < 1:
        raise OutOfGrid("subrectangles need at least two rows and two columns")
    top = rep.mu if rep.kind == "uniform" else rep.mu - 1
    if i0 < 0 or j0 < 0 or i0 + mu2 > top or j0 + lam2 > rep.lam:
        raise OutOfGrid(
            f"rectangle ({i0}..{i0 + mu2}) x ({j0}..{j0 + lam2}) exceeds the grid"
        )
    frame = frame or _component_frame(spec, budget)
    gb = grid_cycle_edges(
        spec.m, rep.a, rep.b, frame, rows=mu2 + 1, lam=lam2, row0=i0, col0=j0
    )
    return HamiltonWitness.cycle(gb.shape.cycle_sequence(), note=_grid_note(gb, lam2, mu2 + 1, None))


def nonuniform_extension(
    spec: BicirculantSpec,
    rep: GridRepresentation,
    budget: Optional[SearchBudget] = None,
    frame: Optional[ComponentFrame] = None,
) -> HamiltonWitness:
    """Extend the rectangular grid cycle over the short row of a
    (lam, mu, rho)-non-uniform representation.

    rho > 0 yields a Hamilton cycle; rho = 0 yields a Hamilton path whose
    endpoints, after shifting subscripts so the first endpoint is u_0, are
    exactly u_0 and u_b (pre-shift they are the copies u_{(mu-1)b} and
    u_{mu b} in column 0).
    """
    if rep.kind != "nonuniform":
        raise PreconditionViolated("nonuniform_extension needs a non-uniform representation")
    if rep.mu <= 1:
        raise PreconditionViolated("the extension needs mu > 1")
    frame = frame or _component_frame(spec, budget)
    if rep.rho > 0:
        gb = grid_cycle_edges(
            spec.m, rep.a, rep.b, frame, rows=rep.mu, lam=rep.lam, short_row=rep.rho
        )
        seq = gb.shape.cycle_sequence()
        return HamiltonWitness.cycle(seq, note=_grid_note(gb, rep.lam, rep.mu, rep.rho))
    gb, start, end = grid_path_edges(spec.m, rep.a, rep.b, frame, rows=rep.mu, lam=rep.lam)
    seq = gb.shape.path_sequence(start, end)
    shift = (-start.index) % spec.m
    note = _grid_note(gb, rep.lam, rep.mu, 0)
    note["frame_shift"] = shift
    note["endpoints_pre_shift"] = [str(start), str(end)]
    witness = HamiltonWitness.path(seq, note=note).shifted(shift, spec.m)
    if witness.sequence[0] != u(0) or witness.sequence[-1] != u(rep.b):
        raise BicirculantError("rho = 0 path endpoints are not u_0 and u_b after the frame shift")
    return witness


def _grid_note(gb: GridBuilder, lam: int, rows: int, rho: Optional[int]) -> dict:
    alpha_pos = 0 if lam % 2 else gb.size - 2
    note = {
        "shape": {"lam": lam, "rows": rows, "rho": rho},
        "join_edges": [
            [str(gb.V(0, 0, 0)), str(gb.V(0, 1, 0))],
            [str(gb.V(0, lam - 1, alpha_pos)), str(gb.V(0, lam, alpha_pos))],
        ],
    }
    return note


# ---------------------------------------------------------------------------
# 2-hooked construction

@dataclass(frozen=True)
class HookComponentData:
    """Per-component inputs for the 2-hooked assembly, in the coordinates of
    the quotient B(m/delta; a/delta, S'/delta, b/delta)."""

    quotient: BicirculantSpec
    cycle: HamiltonWitness  # must use outer and inner edges
    path: HamiltonWitness  # u_0 -> u_{b/delta}


def _embed(witness: HamiltonWitness, delta: int, m: int) -> list[Vertex]:
    return [Vertex(x.layer, (x.index * delta) % m) for x in witness.sequence]


def two_hooked(
    spec: BicirculantSpec,
    c: int,
    data: HookComponentData,
) -> HamiltonWitness:
    """Hamilton cycle of B(m; a, S'+{c}, b) hooked from per-component cycles
    and u_0 -> u_b paths of B(m; a, S', b) via spokes of type c.

    The component path must traverse some inner edge in the +b direction;
    its removal yields the two rails that are shifted by i*x per component
    and hooked with two c-spokes per junction.
    """
    m = spec.m
    a, b = _spec_pair(spec)
    if c not in spec.S or c == 0:
        raise PreconditionViolated(f"c = {c} must be a nonzero spoke type of the spec")
    S_prime = tuple(x for x in spec.S if x != c)
    gamma1 = gcd_all(m, [a], S_prime, [b])
    if gamma1 <= 1:
        raise PreconditionViolated("B(m;a,S',b) must be disconnected for hooking")
    if math.gcd(c, gamma1) != 1:
        raise PreconditionViolated("spokes of type c do not link consecutive components")
    delta = gamma1
    if data.quotient.m * delta != m:
        raise PreconditionViolated(
            f"component data is for m={data.quotient.m}, expected {m}/{delta}"
        )
    # embed component 0 data into the host graph
    path0 = _embed(data.path, delta, m)
    if path0[0] != u(0):
        raise PreconditionViolated("component path must start at the copy of u_0")
    b_used = path0[-1].index
    if path0[-1].layer != OUTER or b_used not in (b % m, (m - b) % m):
        raise PreconditionViolated("component path must end at the copy of u_b")
    cyc0 = _embed(data.cycle, delta, m)
    # locate a +b-oriented inner edge of the path
    cut = None
    for k in range(len(path0) - 1):
        x, y = path0[k], path0[k + 1]
        if x.layer == INNER and y.layer == INNER and (y.index - x.index) % m == b_used:
            cut = k
            break
    if cut is None:
        raise MissingInnerEdge("the component path has no inner edge oriented with b")
    x_shift = (-path0[cut].index) % m
    gamma = gamma1 - 1
    # inner edge of the component cycle -> v_0 .. v_b path for the last hook
    vpath = None
    L = len(cyc0)
    for k in range(L):
        x, y = cyc0[k], cyc0[(k + 1) % L]
        if x.layer == INNER and y.layer == INNER:
            base = cyc0[k + 1 :] + cyc0[: k + 1]  # from y around to x
            d = (y.index - x.index) % m
            if d == b_used:
                vpath = [Vertex(t.layer, (t.index - x.index) % m) for t in reversed(base)]
                break
            if (m - d) % m == b_used:
                vpath = [Vertex(t.layer, (t.index - y.index) % m) for t in base]
                break
    if vpath is None:
        raise MissingInnerEdge("the component cycle uses no inner edges")
    if vpath[0] != v(0) or vpath[-1] != v(b_used):
        raise BicirculantError("internal: v-path ends are not v_0 and v_b")

    def hshift(seq: Sequence[Vertex], d: int) -> list[Vertex]:
        return [Vertex(t.layer, (t.index + d) % m) for t in seq]

    shape = EdgeSetShape()

    def add_path(seq: Sequence[Vertex]):
        for p, q in zip(seq, seq[1:]):
            shape.add(p, q)

    if gamma == 1:
        add_path(path0)  # u_0 .. u_b in the first component
        last = hshift(vpath, c)  # v_0 .. v_b copied into the second
        add_path(last)
        shape.add(u(0), last[0])
        shape.add(path0[-1], last[-1])
    else:
        add_path(path0)
        head = path0[: cut + 1]  # u_0 .. v_{-x}
        tail = path0[cut + 1 :]  # v_{-x+b} .. u_b (reversed orientation)
        for i in range(1, gamma):
            d = (c * i + x_shift * i) % m
            add_path(hshift(head, d))
            add_path(hshift(tail, d))
        last = hshift(vpath, (c * gamma + x_shift * (gamma - 1)) % m)
        add_path(last)
        # hooks between consecutive components
        for i in range(0, gamma - 1):
            di = (c * i + x_shift * i) % m
            dnext = (c * (i + 1) + x_shift * (i + 1)) % m
            # rail A: u-end of the head in H'_i to v-end of the head in H'_{i+1}
            shape.add(
                Vertex(OUTER, (0 + di) % m), Vertex(INNER, (path0[cut].index + dnext) % m)
            )
            shape.add(
                Vertex(OUTER, (b_used + di) % m),
                Vertex(INNER, (tail[0].index + dnext) % m),
            )
        dg = (c * (gamma - 1) + x_shift * (gamma - 1)) % m
        shape.add(Vertex(OUTER, (0 + dg) % m), last[0])
        shape.add(Vertex(OUTER, (b_used + dg) % m), last[-1])
    seq = shape.cycle_sequence()
    return HamiltonWitness.cycle(
        seq, note={"hook_type": int(c), "components": gamma1, "b_used": int(b_used)}
    )


def hook_with_search(
    spec: BicirculantSpec,
    c: int,
    quotient: BicirculantSpec,
    cycle: HamiltonWitness,
    budget: Optional[SearchBudget] = None,
    path: Optional[HamiltonWitness] = None,
) -> HamiltonWitness:
    """two_hooked with component paths from the search engine.

    The hook needs an inner edge of the component path oriented with the
    path's own endpoint difference; a searched path can come out with only
    opposite-oriented inner edges, in which case the path to the negated
    copy of u_b is tried instead.
    """
    from .solver import adjacency_from_spec, hamilton_path

    budget = budget or SearchBudget()
    a_q, b_q = _spec_pair(quotient)

    def candidates():
        if path is not None:
            yield path
        # the short-row extension path always carries a usable inner edge
        try:
            rep = nonuniform_params(quotient.m, quotient.S, a_q, b_q)
            if rep.rho == 0:
                yield nonuniform_extension(quotient, rep, budget=budget)
        except BicirculantError:
            pass
        adj = adjacency_from_spec(quotient)
        for target in {b_q, (quotient.m - b_q) % quotient.m} - {0}:
            res = hamilton_path(adj, Vertex(OUTER, 0), Vertex(OUTER, target), budget)
            if res.kind == "yes":
                yield res.witness

    last_exc: Optional[BicirculantError] = None
    for cand in candidates():
        try:
            return two_hooked(spec, c, HookComponentData(quotient, cycle, cand))
        except MissingInnerEdge as exc:
            last_exc = exc
    raise last_exc or MissingInnerEdge("no usable component path")


# ---------------------------------------------------------------------------
# brick products

@dataclass(frozen=True)
class BrickProduct:
    """C_n x P_k with parity-selected rungs and a boundary matching F."""

    n: int
    k: int
    matching: tuple[tuple[int, int], ...]  # (i at layer 0, j at layer k-1)

    def rung(self, i: int, t: int) -> bool:
        """Rung between (i,t) and (i,t+1); positions and layers 0-based."""
        return (i + t) % 2 == 1

    def degree2_positions(self, boundary: str) -> list[int]:
        if boundary == "first":
            return [i for i in range(self.n) if not self.rung(i, 0)]
        return [i for i in range(self.n) if not self.rung(i, self.k - 2)]

    def vertex(self, i: int, t: int) -> Vertex:
        return Vertex("w", t * self.n + i)

    def edges(self) -> list[tuple[Vertex, Vertex]]:
        out = []
        for t in range(self.k):
            for i in range(self.n):
                out.append((self.vertex(i, t), self.vertex((i + 1) % self.n, t)))
        for t in range(self.k - 1):
            for i in range(self.n):
                if self.rung(i, t):
                    out.append((self.vertex(i, t), self.vertex(i, t + 1)))
        for i, j in self.matching:
            out.append((self.vertex(i, 0), self.vertex(j, self.k - 1)))
        return out


def brick_build(n: int, k: int, matching: Optional[Sequence[tuple[int, int]]] = None) -> BrickProduct:
    """The brick product of C_n with P_{k-1} plus a boundary matching.

    1-based (w_i, z_t) coordinates of the definition map to 0-based (i-1,
    t-1); rungs sit where i + t is even, i.e. (i0 + t0) odd in 0-based
    coordinates.  The default matching pairs the degree-2 vertices of the
    two boundary layers in rotational order.
    """
    if n % 2:
        raise OddN(f"brick products need even n, got {n}")
    if n < 4 or k < 1:
        raise PreconditionViolated("brick products need n >= 4 and k >= 1")
    if k == 1:
        return BrickProduct(n, 1, tuple())
    probe = BrickProduct(n, k, tuple())
    first = probe.degree2_positions("first")
    last = probe.degree2_positions("last")
    if matching is None:
        matching = tuple(zip(first, last))
    matching = tuple((i % n, j % n) for i, j in matching)
    if sorted(i for i, _ in matching) != sorted(first) or sorted(j for _, j in matching) != sorted(last):
        raise PreconditionViolated("F must perfectly match the degree-2 boundary vertices")
    return BrickProduct(n, k, matching)


def _serpent_layered(
    layer_len: int,
    k: int,
    rung_maps: Sequence[dict[int, int]],
) -> Optional[list[tuple[int, int]]]:
    """Hamilton cycle through k ring-layers where each layer is traversed in
    one full sweep and consecutive layers are linked by the given partial
    position maps (layer t position -> layer t+1 position; map k-1 wraps to
    layer 0).  Returns [(layer, position), ...] or None.

    This is the structured search used for brick products: the state space
    is (layer, entry position) with two sweep directions per layer.
    """
    entries = sorted(set(rung_maps[k - 1].values()))
    for e0 in entries:
        # depth-first over sweep directions, deterministic order
        stack = [(0, e0, [])]
        while stack:
            t, e, dirs = stack.pop()
            if t == k:
                if e == e0:
                    seq = []
                    ee = e0
                    for tt in range(k):
                        d = dirs[tt]
                        seq.extend((tt, (ee + d * s) % layer_len) for s in range(layer_len))
                        exit_pos = (ee - d) % layer_len
                        ee = rung_maps[tt][exit_pos]
                    return seq
                continue
            for d in (1, -1):
                exit_pos = (e - d) % layer_len
                nxt = rung_maps[t].get(exit_pos)
                if nxt is not None:
                    stack.append((t + 1, nxt, dirs + [d]))
    return None


def brick_plus_matching_cycle(
    bp: BrickProduct, budget: Optional[SearchBudget] = None
) -> HamiltonWitness:
    """Hamilton cycle of the brick product plus its boundary matching.

    A layer-by-layer serpentine sweep is tried first; tiny instances fall
    back to exhaustive search.
    """
    if bp.k < 2:
        raise PreconditionViolated("need at least two layers to close through F")
    maps: list[dict[int, int]] = []
    for t in range(bp.k - 1):
        maps.append({i: i for i in range(bp.n) if bp.rung(i, t)})
    maps.append({j: i for i, j in bp.matching})  # F runs layer k-1 back to layer 0
    seq = _serpent_layered(bp.n, bp.k, maps)
    if seq is not None:
        return HamiltonWitness.cycle(
            [bp.vertex(i, t) for t, i in seq], note={"method": "serpent", "n": bp.n, "k": bp.k}
        )
    from .solver import AdjacencyView, hamilton_cycle

    verts = [bp.vertex(i, t) for t in range(bp.k) for i in range(bp.n)]
    adj = AdjacencyView(verts, bp.edges())
    res = hamilton_cycle(adj, budget or SearchBudget())
    if res.kind != "yes":
        raise ComponentNotHamiltonian(f"brick search returned {res.kind}")
    return HamiltonWitness.cycle(res.witness.sequence, note={"method": "search"})


# ---------------------------------------------------------------------------
# congruent types: b = +-a mod gcd(m,S)

def _oriented_congruent(spec: BicirculantSpec) -> tuple[int, int, int]:
    """(a, b, g1) with b = +a mod gcd(m,S), flipping b's sign if needed."""
    a, b = _spec_pair(spec)
    g1 = spec.gcd_s()
    if g1 <= 1:
        raise PreconditionViolated("gcd(m,S) must exceed 1")
    if math.gcd(a, g1) != 1 or math.gcd(b, g1) != 1:
        raise PreconditionViolated("a and b must be coprime to gcd(m,S)")
    if (b - a) % g1 == 0:
        return a, b, g1
    if (b + a) % g1 == 0:
        return a, (spec.m - b) % spec.m, g1
    raise PreconditionViolated("b is not congruent to +-a modulo gcd(m,S)")


def congruent_case(
    spec: BicirculantSpec,
    budget: Optional[SearchBudget] = None,
    frame: Optional[ComponentFrame] = None,
) -> HamiltonWitness:
    """Hamilton cycle when b = +-a (mod gcd(m,S)), from per-component cycles.

    Odd component counts use ladder stitchings (one for b = +-a exactly, one
    for the general congruent case); even counts map the component cycles
    onto a brick product and close it through the wrap matching.
    """
    m = spec.m
    if m <= 5 or len(spec.S) < 3:
        raise PreconditionViolated("congruent_case needs m > 5 and |S| >= 3")
    if 0 not in spec.S:
        raise PreconditionViolated("spec must be normalized (0 in S)")
    a, b, g1 = _oriented_congruent(spec)
    if 2 * a == m or 2 * min(spec.T) == m:
        raise PreconditionViolated("half-turn types are excluded")
    frame = frame or _component_frame(spec, budget)
    if g1 % 2:
        if b == a:
            return _congruent_equal_types(spec, a, g1, frame)
        return _congruent_general(spec, a, b, g1, frame)
    return _congruent_even_brick(spec, a, b, g1, frame, budget)


class _CellSheet:
    """Shifted copies of a component frame along the type-a component chain."""

    def __init__(self, m: int, a: int, frame: ComponentFrame):
        self.m = m
        self.a = a
        self.frame = frame
        self.size = frame.size

    def V(self, i: int, pos: int) -> Vertex:
        base = self.frame.cycle[pos % self.size]
        return Vertex(base.layer, (base.index + i * self.a) % self.m)

    def cell_edges(self, shape: EdgeSetShape, i: int, cuts):
        cuts = {c % self.size for c in cuts}
        for p in range(self.size):
            if p not in cuts:
                shape.add(self.V(i, p), self.V(i, p + 1))


def _congruent_equal_types(
    spec: BicirculantSpec, a: int, g1: int, frame: ComponentFrame
) -> HamiltonWitness:
    """b = a: ladder over the g1 components with same-label inner edges."""
    sheet = _CellSheet(spec.m, a, frame)
    n2 = frame.size
    g = g1 - 1
    shape = EdgeSetShape()
    sheet.cell_edges(shape, 0, cuts={0})  # the path v_s .. u_0
    for i in range(1, g):
        sheet.cell_edges(shape, i, cuts={0, n2 - 1})  # strand plus isolated u_0
    sheet.cell_edges(shape, g, cuts={n2 - 1})  # the path u_0 .. v_0
    for i in range(0, g):  # u_0 ladder
        shape.add(sheet.V(i, 0), sheet.V(i + 1, 0))
    for i in range(0, g, 2):  # v_s ladder on even junctions
        shape.add(sheet.V(i, 1), sheet.V(i + 1, 1))
    for i in range(1, g, 2):  # v_0 ladder on odd junctions
        shape.add(sheet.V(i, n2 - 1), sheet.V(i + 1, n2 - 1))
    return HamiltonWitness.cycle(shape.cycle_sequence(), note={"congruent": "equal_types"})


def _congruent_general(
    spec: BicirculantSpec, a: int, b: int, g1: int, frame: ComponentFrame
) -> HamiltonWitness:
    """b = a (mod g1) but b != +-a: ladder through the +b partner of v_0.

    All labels are relative to the frame: the diagonal inner edges run from
    the v_0-role vertex of one component to the vertex b-a further on in
    the next one.
    """
    m = spec.m
    eps = (b - a) % m
    target = Vertex(INNER, (frame.v0.index + eps) % m)
    pos_e = None
    for k, vv in enumerate(frame.cycle):
        if vv == target:
            pos_e = k
            break
    if pos_e is None:
        raise BicirculantError("the +b partner of v_0 is not in the base component")
    sheet = _CellSheet(m, a, frame)
    n2 = frame.size
    g = g1 - 1
    shape = EdgeSetShape()
    sheet.cell_edges(shape, 0, cuts={n2 - 1})  # u_0 .. v_0
    for i in range(1, g):
        sheet.cell_edges(shape, i, cuts={n2 - 1, pos_e - 1})
    sheet.cell_edges(shape, g, cuts={pos_e - 1})  # u_p .. v_eps
    for i in range(0, g - 1, 2):  # u_0 rungs on even junctions
        shape.add(sheet.V(i, 0), sheet.V(i + 1, 0))
    for i in range(1, g, 2):  # u_p rungs on odd junctions
        shape.add(sheet.V(i, pos_e - 1), sheet.V(i + 1, pos_e - 1))
    for i in range(0, g):  # v_0 -> v_eps diagonal inner edges
        shape.add(sheet.V(i, n2 - 1), sheet.V(i + 1, pos_e))
    return HamiltonWitness.cycle(shape.cycle_sequence(), note={"congruent": "general"})


def _congruent_even_brick(
    spec: BicirculantSpec,
    a: int,
    b: int,
    g1: int,
    frame: ComponentFrame,
    budget: Optional[SearchBudget],
) -> HamiltonWitness:
    """Even component count: the components with alternating full rungs form
    a brick product; the wrap inner edges are the matching F."""
    m = spec.m
    eps = (b - a) % m
    n2 = frame.size
    pos_of = {vv: k for k, vv in enumerate(frame.cycle)}
    sigma = {}  # interior inner rungs: +b from layer t lands eps further on
    wrap = {}  # layer g -> layer 0 inner edges close the ring
    for p in range(1, n2, 2):
        vv = frame.cycle[p]
        sigma[p] = pos_of[Vertex(INNER, (vv.index + eps) % m)]
        wrap[p] = pos_of[Vertex(INNER, (vv.index + a * (g1 - 1) + b) % m)]
    maps: list[dict[int, int]] = []
    for t in range(g1 - 1):
        if t % 2 == 0:
            maps.append({p: p for p in range(0, n2, 2)})  # outer rungs
        else:
            maps.append(dict(sigma))
    maps.append(dict(wrap))  # the matching F of wrap inner edges
    seq = _serpent_layered(n2, g1, maps)
    sheet = _CellSheet(m, a, frame)
    if seq is not None:
        return HamiltonWitness.cycle(
            [sheet.V(t, p) for t, p in seq], note={"congruent": "even_brick", "method": "serpent"}
        )
    # fallback: search the union of component cycles, rungs and wrap
    from .solver import AdjacencyView, hamilton_cycle

    shape = EdgeSetShape()
    for i in range(g1):
        sheet.cell_edges(shape, i, cuts=())
    edge_list = [tuple(e) for e in shape.edges]
    for t in range(g1):
        for p in range(n2):
            if t % 2 == 0 and t < g1 - 1 and p % 2 == 0:
                edge_list.append((sheet.V(t, p), sheet.V(t + 1, p)))
            elif t % 2 == 1 and p % 2 == 1:
                tgt = sigma[p] if t < g1 - 1 else wrap[p]
                edge_list.append((sheet.V(t, p), sheet.V((t + 1) % g1, tgt)))
    verts = [sheet.V(i, p) for i in range(g1) for p in range(n2)]
    res = hamilton_cycle(AdjacencyView(verts, edge_list), budget or SearchBudget())
    if res.kind != "yes":
        raise ComponentNotHamiltonian(f"brick-shaped search returned {res.kind}")
    return HamiltonWitness.cycle(res.witness.sequence, note={"congruent": "even_brick", "method": "search"})


# ---------------------------------------------------------------------------
# single-row uniform case (every type-b edge internal to a vertical component)

def ring_uniform_cycle(
    spec: BicirculantSpec,
    budget: Optional[SearchBudget] = None,
    frame: Optional[ComponentFrame] = None,
) -> Optional[HamiltonWitness]:
    """gcd(m,S,b) = gcd(m,S): the vertical components form a single ring
    linked by type-a edges, with the type-b edges internal to each cell.

    Each cell is traversed by a Hamilton path between two outer vertices
    that uses exactly one internal inner edge; the per-cell port shift must
    telescope around the ring.  Returns None when no admissible inner edge
    and spoke choice exists.
    """
    m = spec.m
    a, b = _spec_pair(spec)
    g1 = spec.gcd_s()
    if g1 <= 1 or math.gcd(g1, b) != g1:
        raise PreconditionViolated("ring case needs b divisible by gcd(m,S) > 1")
    frame = frame or _component_frame(spec, budget)
    n2 = frame.size
    ring = g1  # number of cells
    pos_of = {vv: k for k, vv in enumerate(frame.cycle)}
    for p in range(1, n2, 2):
        vq2 = Vertex(INNER, (frame.cycle[p].index + b) % m)
        q2 = pos_of.get(vq2)
        if q2 is None or q2 == p:
            continue
        for du in (-1, 1):
            for du2 in (-1, 1):
                up = (p + du) % n2
                up2 = (q2 + du2) % n2
                if up in (p, q2, up2) or up2 in (p, q2):
                    continue
                d = (frame.cycle[up2].index - frame.cycle[up].index) % m
                if (ring * (d + a)) % m != 0:
                    continue
                witness = _ring_assemble(spec, frame, a, p, q2, up, up2, ring)
                if witness is not None:
                    return witness
    return None


def _ring_assemble(spec, frame, a, p, q2, up, up2, ring) -> Optional[HamiltonWitness]:
    m = spec.m
    n2 = frame.size
    U1 = frame.cycle[up].index
    U2 = frame.cycle[up2].index
    step = ((U2 - U1) % m + a) % m
    # cut the spoke between positions p/up and between q2/up2
    cut1 = p if (p + 1) % n2 == up else up
    cut2 = q2 if (q2 + 1) % n2 == up2 else up2
    if cut1 == cut2:
        return None
    shape = EdgeSetShape()
    try:
        for i in range(ring):
            off = (i * step) % m

            def W(pos: int, o=off):
                base = frame.cycle[pos % n2]
                return Vertex(base.layer, (base.index + o) % m)

            for pos in range(n2):
                if pos == cut1 or pos == cut2:
                    continue
                shape.add(W(pos), W(pos + 1))
            shape.add(W(p), W(q2))  # the internal type-b chord
            shape.add(W(up2), Vertex(OUTER, (U2 + off + a) % m))  # hook to the next cell
        seq = shape.cycle_sequence()
    except BicirculantError:
        return None
    if len(seq) != ring * n2:
        return None
    return HamiltonWitness.cycle(seq, note={"ring_cells": ring})


# ---------------------------------------------------------------------------
# type classification and spoke selection

def pair_grid_kind(spec: BicirculantSpec, a: int, b: int) -> Optional[str]:
    """'congruent', 'rho_positive' or 'rho_zero' for one (a,b) choice."""
    g1 = spec.gcd_s()
    if math.gcd(a, g1) != 1 or math.gcd(b, g1) != 1:
        return None
    if (b - a) % g1 == 0 or (b + a) % g1 == 0:
        return "congruent"
    rep = nonuniform_params(spec.m, spec.S, a, b)
    return "rho_positive" if rep.rho > 0 else "rho_zero"


@dataclass(frozen=True)
class TypeVerdict:
    kind: str  # "type1" | "type2" | "not_applicable"
    pair: Optional[tuple[int, int]] = None
    reason: str = ""
    pair_kinds: dict = field(default_factory=dict, compare=False)


def classify_type(spec: BicirculantSpec, min_spokes: int = 4) -> TypeVerdict:
    """Type I iff some (a,b) in R x T is congruent mod gcd(m,S) or gives a
    non-uniform representation with rho > 0; type II iff every pair gives
    rho = 0.  The first qualifying pair in ascending order is reported."""
    m = spec.m
    from .graph import is_connected

    if not is_connected(spec):
        return TypeVerdict("not_applicable", reason="disconnected")
    if len(spec.S) < min_spokes:
        return TypeVerdict("not_applicable", reason=f"|S| < {min_spokes}")
    if 0 not in spec.S:
        return TypeVerdict("not_applicable", reason="not normalized")
    g1 = spec.gcd_s()
    if g1 <= 1:
        return TypeVerdict("not_applicable", reason="gcd(m,S) = 1")
    if not spec.R or not spec.T:
        return TypeVerdict("not_applicable", reason="R or T empty")
    if m % 2 == 0 and (m // 2 in spec.R or m // 2 in spec.T):
        return TypeVerdict("not_applicable", reason="half-turn type present")
    for x in spec.R + spec.T:
        if math.gcd(x, g1) != 1:
            return TypeVerdict("not_applicable", reason=f"{x} shares a factor with gcd(m,S)")
    kinds = {}
    first_type1 = None
    for a in spec.R:
        for b in spec.T:
            kind = pair_grid_kind(spec, a, b)
            kinds[(a, b)] = kind
            if kind in ("congruent", "rho_positive") and first_type1 is None:
                first_type1 = (a, b)
    if first_type1 is not None:
        return TypeVerdict("type1", pair=first_type1, pair_kinds=kinds)
    return TypeVerdict("type2", pair=(min(spec.R), min(spec.T)), pair_kinds=kinds)


def spanning_three_spoke_subset(spec: BicirculantSpec) -> Optional[tuple[int, int, int]]:
    """A 3-subset {c_i, c_j, c_k} of S such that B(m; R, {c_i,c_j,c_k}, T) is
    connected, i.e. gcd(m, R, T, c_i - c_k, c_j - c_k) = 1; None if no
    triple works."""
    if len(spec.S) < 4:
        raise PreconditionViolated("three-spoke reduction needs |S| >= 4")
    m = spec.m
    base = gcd_all(m, spec.R, spec.T)
    S = sorted(spec.S)
    from itertools import combinations

    for trio in combinations(S, 3):
        ci, cj, ck = trio
        if math.gcd(math.gcd(base, (ci - ck) % m), (cj - ck) % m) == 1:
            return trio
    return None
