"""Hamilton cycles through grids of Haar-graph components.

Cells are copies of one component cycle C (2n vertices, alternating outer /
inner); cell (i,j) shifts subscripts by i*b + j*a.  Inside the grid, inner
vertices of row-adjacent cells are joined at equal labels by type-b edges
and outer vertices of column-adjacent cells by type-a edges.  No wrap edges
(row M back to row 0, or column lam back to column 0) are ever used.

The generator is row-inductive:

  * a two-row serpentine base covering rows {0,1};
  * a surgery that grafts one more row onto the current bottom row,
    alternating between the u_0-flavored and u_z-flavored bottom profile
    (the same move extends a full-width row, the short row of a
    non-uniform representation, and - with no columns at all - produces
    the rho = 0 Hamilton path instead of a cycle).

Every produced edge set is walked and must form a single cycle (or path)
covering the requested cells exactly; failures raise immediately.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import BicirculantError, OutOfGrid
from .graph import Vertex
from .solver import ComponentFrame

Edge = frozenset


def _edge(x: Vertex, y: Vertex) -> Edge:
    if x == y:
        raise BicirculantError(f"degenerate edge at {x}")
    return frozenset((x, y))


class EdgeSetShape:
    """A set of edges plus the walk that certifies its shape."""

    def __init__(self):
        self.edges: set[Edge] = set()

    def add(self, x: Vertex, y: Vertex):
        e = _edge(x, y)
        if e in self.edges:
            raise BicirculantError(f"edge {sorted(e)} added twice")
        self.edges.add(e)

    def remove(self, x: Vertex, y: Vertex):
        e = _edge(x, y)
        if e not in self.edges:
            raise BicirculantError(f"edge {sorted(e)} not present to remove")
        self.edges.remove(e)

    def adjacency(self) -> dict[Vertex, list[Vertex]]:
        adj: dict[Vertex, list[Vertex]] = {}
        for e in self.edges:
            x, y = tuple(e)
            adj.setdefault(x, []).append(y)
            adj.setdefault(y, []).append(x)
        return adj

    def cycle_sequence(self) -> list[Vertex]:
        adj = self.adjacency()
        bad = [x for x, ns in adj.items() if len(ns) != 2]
        if bad:
            raise BicirculantError(f"not a 2-regular edge set at {sorted(bad)[:4]}")
        start = min(adj)
        seq = [start]
        prev, cur = None, start
        while True:
            a, b = adj[cur]
            nxt = b if a == prev else a if b == prev else min(a, b)
            if nxt == start:
                break
            seq.append(nxt)
            prev, cur = cur, nxt
        if len(seq) != len(adj):
            raise BicirculantError(
                f"edge set splits into several cycles ({len(seq)} of {len(adj)} vertices walked)"
            )
        return seq

    def path_sequence(self, start: Vertex, end: Vertex) -> list[Vertex]:
        adj = self.adjacency()
        degs = {x: len(ns) for x, ns in adj.items()}
        ones = sorted(x for x, d in degs.items() if d == 1)
        if ones != sorted((start, end)) or any(d > 2 for d in degs.values()):
            raise BicirculantError(f"not a path with endpoints {start},{end}: degree-1 set {ones}")
        seq = [start]
        prev, cur = None, start
        while cur != end or len(seq) == 1:
            ns = adj[cur]
            nxt = ns[0] if len(ns) == 1 else (ns[1] if ns[0] == prev else ns[0])
            seq.append(nxt)
            prev, cur = cur, nxt
            if len(seq) > len(adj):
                raise BicirculantError("path walk did not terminate")
        if len(seq) != len(adj):
            raise BicirculantError("edge set is a path plus extra components")
        return seq


@dataclass(frozen=True)
class Flavor:
    """Position aliases for the two bottom-row profiles.

    The u_0 flavor runs along the u_0 copies with v_s / v_0 as its strand
    ports; the u_z flavor swaps in u_z with v_h / v_k, as in the parity
    swap of the extension construction.
    """

    run: int  # outer position carrying the horizontal run
    ps: int  # "v_s"-role port
    po: int  # "v_0"-role port
    cut_main: int  # cut index of the run--ps edge
    cut_other: int  # cut index of the po--run edge


class GridBuilder:
    """Edge emitter over a sub-rectangle of cells with a fixed base frame."""

    def __init__(self, m: int, a: int, b: int, frame: ComponentFrame, row0: int = 0, col0: int = 0):
        self.m = m
        self.a = a % m
        self.b = b % m
        self.frame = frame
        self.base_shift = (row0 * self.b + col0 * self.a) % m
        self.size = frame.size
        pz = frame.p_z
        self.u0_flavor = Flavor(run=0, ps=1, po=self.size - 1, cut_main=0, cut_other=self.size - 1)
        self.uz_flavor = Flavor(run=pz, ps=pz - 1, po=pz + 1, cut_main=pz - 1, cut_other=pz)
        self.shape = EdgeSetShape()
        # bottom-row profile bookkeeping for grafting
        self.bottom_row = 1
        self.bottom_left_cut = 0
        self.bottom_right_cut = self.size - 1
        self.sealed = False  # set once a short row lands; no further grafts

    def flavor(self, row: int) -> Flavor:
        return self.u0_flavor if row % 2 else self.uz_flavor

    def V(self, i: int, j: int, pos: int) -> Vertex:
        base = self.frame.cycle[pos % self.size]
        return Vertex(base.layer, (base.index + self.base_shift + i * self.b + j * self.a) % self.m)

    def cell_edges(self, i: int, j: int, cuts: Iterable[int] = ()):
        cuts = set(c % self.size for c in cuts)
        for p in range(self.size):
            if p in cuts:
                continue
            self.shape.add(self.V(i, j, p), self.V(i, j, p + 1))

    def vertical(self, i: int, j: int, pos: int):
        self.shape.add(self.V(i, j, pos), self.V(i + 1, j, pos))

    def horizontal(self, i: int, j: int, pos: int):
        self.shape.add(self.V(i, j, pos), self.V(i, j + 1, pos))

    # -- two-row serpentine base ------------------------------------------

    def build_base(self, lam: int):
        """Rows {0,1}: caps with a P0/P1-alternating top bus, a u_0 run
        along row 1, and per-column strand dips."""
        n2 = self.size
        P0, PS, PO = 0, 1, n2 - 1
        P1 = n2 - 2
        self.cell_edges(0, 0, cuts={0})
        self.vertical(0, 0, PS)
        for j in range(1, lam):
            self.cell_edges(0, j, cuts={0, n2 - 2})
            self.vertical(0, j, PS)
            self.vertical(0, j, PO)
        if lam % 2:
            self.cell_edges(0, lam, cuts={n2 - 1})
        else:
            self.cell_edges(0, lam, cuts={n2 - 2})
        self.vertical(0, lam, PO)
        for g in range(lam):
            self.horizontal(0, g, P0 if g % 2 == 0 else P1)
        # bottom row: u_0 flavor
        self.cell_edges(1, 0, cuts={0})
        for j in range(1, lam):
            self.cell_edges(1, j, cuts={0, n2 - 1})
        self.cell_edges(1, lam, cuts={n2 - 1})
        for g in range(lam):
            self.horizontal(1, g, P0)
        self.bottom_row = 1
        self.bottom_left_cut = 0
        self.bottom_right_cut = n2 - 1

    # -- row grafting -----------------------------------------------------

    def _corner_path(self, cut: int) -> list[int]:
        """Traversal order of a single-cut corner cell's positions."""
        n2 = self.size
        return [(cut + 1 + k) % n2 for k in range(n2)]

    def _pick_corner_cut(self, old_cut: int, fl: Flavor, old_run: int, want_separating: bool) -> int:
        """The cut adjacent to fl.run that does / does not separate fl.run
        from the old run position along the corner cell's path."""
        order = {p: k for k, p in enumerate(self._corner_path(old_cut))}
        for cand in (fl.cut_main, fl.cut_other):
            i1, i2 = order[cand], order[(cand + 1) % self.size]
            if abs(i1 - i2) != 1:
                continue  # this edge is the corner's own cut; not present
            k = min(i1, i2)
            separated = (order[fl.run] <= k) != (order[old_run] <= k)
            if separated == want_separating:
                return cand
        raise BicirculantError("no admissible corner cut; degenerate frame")

    def _graft(self, new_row: int, width: int, right_cut: int):
        r = new_row - 1
        fl = self.flavor(new_row)
        old_fl = self.flavor(r)
        left_cut = self._pick_corner_cut(self.bottom_left_cut, fl, old_fl.run, want_separating=False)
        beta_left = fl.ps if left_cut == fl.cut_main else fl.po
        beta_right = fl.ps if right_cut == fl.cut_main else fl.po
        self.shape.remove(self.V(r, 0, left_cut), self.V(r, 0, (left_cut + 1) % self.size))
        for j in range(1, width):
            self.shape.remove(self.V(r, j, fl.run), self.V(r, j, fl.ps))
            self.shape.remove(self.V(r, j, fl.po), self.V(r, j, fl.run))
        self.shape.remove(self.V(r, width, right_cut), self.V(r, width, (right_cut + 1) % self.size))
        # new cells
        self.cell_edges(new_row, 0, cuts={left_cut})
        self.vertical(r, 0, beta_left)
        for j in range(1, width):
            self.cell_edges(new_row, j, cuts={fl.cut_main, fl.cut_other})
            self.vertical(r, j, fl.ps)
            self.vertical(r, j, fl.po)
        self.cell_edges(new_row, width, cuts={right_cut})
        self.vertical(r, width, beta_right)
        # runs along both touched rows
        for g in range(width):
            self.horizontal(r, g, fl.run)
            self.horizontal(new_row, g, fl.run)
        self.bottom_row = new_row
        self.bottom_left_cut = left_cut
        self.bottom_right_cut = right_cut

    def add_row(self, new_row: int, width: int, lam: int):
        """Graft cells (new_row, 0..width) onto the bottom row new_row - 1.

        width = lam extends the rectangle; width < lam realizes the short
        row of a non-uniform representation (rho = width).  The graft is
        verified to keep a single cycle; a right-corner cut that closes a
        stray loop is retried with the opposite cut.
        """
        if self.sealed:
            raise BicirculantError("cannot graft onto a short row")
        if new_row != self.bottom_row + 1:
            raise BicirculantError("rows must be grafted in order")
        if width < 1:
            raise BicirculantError("add_row needs at least two columns; use add_path_row")
        fl = self.flavor(new_row)
        if width == lam:
            first = self._pick_corner_cut(self.bottom_right_cut, fl, self.flavor(new_row - 1).run, True)
        else:
            first = fl.cut_other if width % 2 == 0 else fl.cut_main
        snapshot = set(self.shape.edges)
        state = (self.bottom_row, self.bottom_left_cut, self.bottom_right_cut)
        self._graft(new_row, width, first)
        try:
            self.shape.cycle_sequence()
        except BicirculantError:
            # the right corner has two locally valid cuts and the correct
            # one depends on the inherited strand orientation
            self.shape.edges = snapshot
            self.bottom_row, self.bottom_left_cut, self.bottom_right_cut = state
            self._graft(new_row, width, fl.cut_main if first == fl.cut_other else fl.cut_other)
            self.shape.cycle_sequence()
        if width != lam:
            self.sealed = True

    def add_path_row(self, new_row: int) -> tuple[Vertex, Vertex]:
        """The rho = 0 move: opens the cycle and extends it into one new
        cell below column 0; returns the resulting path endpoints."""
        if self.sealed:
            raise BicirculantError("cannot graft onto a short row")
        r = new_row - 1
        fl = self.flavor(new_row)
        self.shape.remove(self.V(r, 0, fl.run), self.V(r, 0, fl.ps))
        self.cell_edges(new_row, 0, cuts={fl.cut_main})
        self.vertical(r, 0, fl.ps)
        self.sealed = True
        return self.V(r, 0, fl.run), self.V(new_row, 0, fl.run)


def grid_cycle_edges(
    m: int,
    a: int,
    b: int,
    frame: ComponentFrame,
    rows: int,
    lam: int,
    short_row: Optional[int] = None,
    row0: int = 0,
    col0: int = 0,
) -> GridBuilder:
    """Hamilton cycle edge set over `rows` full rows (0..rows-1) of columns
    0..lam, optionally plus a short row of cells 0..short_row."""
    if rows < 2:
        raise OutOfGrid("grid cycles need at least two full rows")
    if lam < 1:
        raise OutOfGrid("grid cycles need at least two columns")
    gb = GridBuilder(m, a, b, frame, row0=row0, col0=col0)
    gb.build_base(lam)
    for r in range(2, rows):
        gb.add_row(r, lam, lam)
    if short_row is not None:
        if not 1 <= short_row <= lam:
            raise OutOfGrid(f"short row width {short_row} out of range 1..{lam}")
        gb.add_row(rows, short_row, lam)
    return gb


def grid_path_edges(
    m: int, a: int, b: int, frame: ComponentFrame, rows: int, lam: int
) -> tuple[GridBuilder, Vertex, Vertex]:
    """rows full rows plus the single-cell row below column 0 (rho = 0)."""
    gb = grid_cycle_edges(m, a, b, frame, rows, lam)
    s, e = gb.add_path_row(rows)
    return gb, s, e
