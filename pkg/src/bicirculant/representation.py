"""Uniform and non-uniform grid representations of B(m; a, S, b).

The gcd(m,S) components of H(m;S) are arranged in a grid: columns are the
vertical components (linked by type-a outer edges), rows are linked by
type-b inner edges.  Uniform representations fill a (lam+1) x (mu+1)
rectangle; non-uniform ones have rho+1 tall columns of mu+1 components and
lam-rho columns of mu components.  rho = lam encodes the uniform case so
both share one grid code path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    BicirculantError,
    CongruentTypes,
    HalfTurnType,
    NotCoprime,
    OutOfGrid,
    PreconditionViolated,
    TooSmall,
)
from .graph import Vertex, gcd_all


def haar_component_of(m: int, S, vtx: Vertex) -> int:
    """Component index of a vertex in H(m;S): its residue mod gcd(m,S)."""
    if 0 not in S:
        raise BicirculantError("haar_component_of requires the normalized spoke set")
    return vtx.index % gcd_all(m, S)


@dataclass(frozen=True)
class GridRepresentation:
    kind: str  # "uniform" | "nonuniform"
    b: int  # oriented: possibly m - b_input
    b_input: int
    g_plus_1: int  # gcd(m,S) = number of H(m;S) components
    lam: int
    mu: int
    rho: int  # lam for uniform representations
    a: Optional[int] = None
    h: Optional[int] = None
    h_star: Optional[int] = None
    cell_of_component: dict = field(default_factory=dict, compare=False)

    def cells(self) -> list[tuple[int, int]]:
        """All grid cells, row-major; row mu is short when rho < lam."""
        out = [(i, j) for i in range(self.rows - 1) for j in range(self.lam + 1)]
        out.extend((self.rows - 1, j) for j in range(self.rho + 1))
        return out

    @property
    def rows(self) -> int:
        return self.mu + 1

    def in_grid(self, i: int, j: int) -> bool:
        if i < 0 or j < 0 or i > self.mu:
            return False
        return j <= (self.rho if i == self.mu else self.lam)

    def component_of_cell(self, i: int, j: int) -> int:
        if not self.in_grid(i, j):
            raise OutOfGrid(f"cell ({i},{j}) outside a ({self.lam},{self.mu},{self.rho}) grid")
        if self.a is None:
            raise BicirculantError("grid_assign has not fixed the outer type yet")
        return (i * self.b + j * self.a) % self.g_plus_1

    def to_json_dict(self) -> dict:
        grid = []
        if self.cell_of_component:
            back = {cell: comp for comp, cell in self.cell_of_component.items()}
            for i in range(self.rows):
                width = self.rho + 1 if i == self.mu else self.lam + 1
                grid.append([back[(i, j)] for j in range(width)])
        return {
            "kind": self.kind,
            "a": self.a,
            "b": self.b,
            "b_input": self.b_input,
            "h": self.h,
            "h_star": self.h_star,
            "lambda": self.lam,
            "mu": self.mu,
            "rho": self.rho,
            "gcd_m_S": self.g_plus_1,
            "grid": grid,
        }


def _common_checks(m: int, S, b: int, need_m_gt_5: bool) -> int:
    if 0 not in S:
        raise BicirculantError("grid representations require the normalized spoke set")
    if need_m_gt_5 and m <= 5:
        raise TooSmall(f"m = {m} <= 5")
    g1 = gcd_all(m, S)
    if g1 <= 1:
        raise PreconditionViolated("gcd(m,S) must exceed 1 for a grid representation")
    if 2 * (b % m) == m:
        raise HalfTurnType("b = m/2 has no grid representation")
    return g1


def uniform_params(m: int, S, b: int, a: Optional[int] = None) -> GridRepresentation:
    """(lam, mu) for b not coprime to gcd(m,S): lam = gcd(m,S,b) - 1."""
    b %= m
    g1 = _common_checks(m, S, b, need_m_gt_5=False)
    gb = math.gcd(g1, b)
    if gb <= 1:
        raise PreconditionViolated(f"b = {b} is coprime to gcd(m,S) = {g1}; not a uniform case")
    lam = gb - 1
    mu = g1 // gb - 1
    rep = GridRepresentation(
        kind="uniform", b=b, b_input=b, g_plus_1=g1, lam=lam, mu=mu, rho=lam, a=a
    )
    if a is not None:
        grid_assign(rep, m, S, a, b)
    return rep


def nonuniform_params(m: int, S, a: int, b: int) -> GridRepresentation:
    """(lam, mu, rho) from the congruence b = h*a mod gcd(m,S).

    h is reduced to h* = min(h, gcd-h) by replacing b with -b when needed,
    so the stored b always has v_b in cell (1,0).  lam = h*-1 and mu, rho+1
    are the quotient and remainder of gcd(m,S) by h*.
    """
    a %= m
    b_in = b % m
    g1 = _common_checks(m, S, b_in, need_m_gt_5=True)
    if 2 * a == m:
        raise HalfTurnType("a = m/2 has no grid representation")
    if math.gcd(a, g1) != 1 or math.gcd(b_in, g1) != 1:
        raise NotCoprime(f"a = {a}, b = {b_in} must both be coprime to gcd(m,S) = {g1}")
    h = (b_in * pow(a, -1, g1)) % g1
    if h == 1 or h == g1 - 1:
        raise CongruentTypes(f"b = {b_in} is congruent to +-a mod {g1}")
    b = b_in
    if h > g1 - h:
        b = (m - b_in) % m
        h = g1 - h
    lam = h - 1
    mu, rem = divmod(g1, h)
    rho = rem - 1
    if mu <= 1 or rho < 0 or rho >= lam:
        raise BicirculantError(
            f"internal: non-uniform parameters out of range (g={g1}, h={h}, mu={mu}, rho={rho})"
        )
    rep = GridRepresentation(
        kind="nonuniform",
        b=b,
        b_input=b_in,
        g_plus_1=g1,
        lam=lam,
        mu=mu,
        rho=rho,
        a=a,
        h=h,
        h_star=h,
    )
    grid_assign(rep, m, S, a, b)
    return rep


def grid_assign(rep: GridRepresentation, m: int, S, a: int, b: Optional[int] = None) -> dict:
    """Fill the component -> cell map; cell (i,j) holds residue i*b + j*a.

    For the non-uniform case this is the partition H_{i,j} = H_{i*h+j} of
    the components ordered by type-a tracing.  For the uniform case the
    columns advance by a, which must generate the component classes of
    B(m;0,S,b) (equivalently B(m;a,S,b) is connected).
    """
    a %= m
    b = rep.b if b is None else (b % m)
    g1 = rep.g_plus_1
    if rep.kind == "uniform" and math.gcd(a, math.gcd(g1, b) if b else g1) != 1:
        raise PreconditionViolated(
            f"a = {a} shares a factor with gcd(m,S,b); B(m;a,S,b) is disconnected"
        )
    if rep.a is None:
        object.__setattr__(rep, "a", a)
    elif rep.a != a:
        raise BicirculantError(f"representation already assigned with a = {rep.a}")
    mapping = {}
    for i, j in rep.cells():
        r = (i * rep.b + j * a) % g1
        if r in mapping:
            raise PreconditionViolated(f"cell map not bijective at residue {r}")
        mapping[r] = (i, j)
    rep.cell_of_component.clear()
    rep.cell_of_component.update(mapping)
    return dict(mapping)


def coord_vertex(rep: GridRepresentation, m: int, i: int, j: int, x: int, layer: str) -> Vertex:
    """u^{i,j}_x = u_{x + i*b + j*a} with the oriented b stored in rep."""
    if not rep.in_grid(i, j):
        raise OutOfGrid(f"({i},{j}) outside the grid")
    if rep.a is None:
        raise BicirculantError("coordinates need the outer type; run grid_assign first")
    return Vertex(layer, (x + i * rep.b + j * rep.a) % m)
