"""Bicirculant graphs B(m;R,S,T): parameter model, edges, components, exceptions.

A bicirculant on 2m vertices has outer vertices u_0..u_{m-1}, inner vertices
v_0..v_{m-1}, outer edges u_i u_{i+a} (a in R), inner edges v_i v_{i+b}
(b in T) and spokes u_i v_{i+c} (c in S).  R and T are closed under negation
mod m, 0 lies in S after normalization and never in R or T.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .errors import (
    BicirculantError,
    EmptyS,
    HalfTurnType,
    NonSymmetricSet,
    ZeroInRT,
)

OUTER = "u"
INNER = "v"


class Vertex(NamedTuple):
    layer: str  # "u" or "v"
    index: int

    def __str__(self) -> str:
        return f"{self.layer}{self.index}"


class EdgeKind(NamedTuple):
    kind: str  # "outer" | "inner" | "spoke"
    t: int  # the edge type (element of R, T or S)


def u(i: int) -> Vertex:
    return Vertex(OUTER, i)


def v(i: int) -> Vertex:
    return Vertex(INNER, i)


def parse_vertex(text: str) -> Vertex:
    m = re.fullmatch(r"([uv])(\d+)", text.strip())
    if not m:
        raise BicirculantError(f"bad vertex literal {text!r}")
    return Vertex(m.group(1), int(m.group(2)))


def gcd_all(m: int, *sets: Iterable[int]) -> int:
    g = m
    for s in sets:
        for x in s:
            g = math.gcd(g, x)
    return g


@dataclass(frozen=True)
class BicirculantSpec:
    m: int
    R: tuple[int, ...]
    S: tuple[int, ...]
    T: tuple[int, ...]

    def __str__(self) -> str:
        fmt = lambda xs: ",".join(str(x) for x in xs)
        return f"B({self.m};{fmt(self.R)};{fmt(self.S)};{fmt(self.T)})"

    @property
    def n_vertices(self) -> int:
        return 2 * self.m

    def gcd_s(self) -> int:
        """gcd(m, S) after shifting S to contain 0: the component count of H(m;S)."""
        c0 = min(self.S)
        return gcd_all(self.m, ((x - c0) % self.m for x in self.S))

    def shift(self, v: Vertex, d: int) -> Vertex:
        return Vertex(v.layer, (v.index + d) % self.m)

    def to_json_dict(self) -> dict:
        return {"m": self.m, "R": list(self.R), "S": list(self.S), "T": list(self.T)}


def validate_spec(
    m: int,
    R: Iterable[int],
    S: Iterable[int],
    T: Iterable[int],
    close_symmetry: bool = True,
) -> BicirculantSpec:
    """Reduce, deduplicate and symmetry-close a raw parameter quadruple.

    With close_symmetry=False, an R or T lacking some negation raises
    NonSymmetricSet instead of being completed.
    """
    if m < 1:
        raise BicirculantError(f"m must be >= 1, got {m}")

    def close(raw: Iterable[int], name: str) -> tuple[int, ...]:
        red = {x % m for x in raw}
        if 0 in red:
            raise ZeroInRT(f"0 in {name} is not allowed")
        neg = {(-x) % m for x in red}
        if red != neg:
            if not close_symmetry:
                missing = sorted(neg - red)
                raise NonSymmetricSet(f"{name} misses negations {missing}")
            red |= neg
        return tuple(sorted(red))

    S_red = tuple(sorted({x % m for x in S}))
    if not S_red:
        raise EmptyS("S must be nonempty")
    return BicirculantSpec(m=m, R=close(R, "R"), S=S_red, T=close(T, "T"))


_SPEC_RE = re.compile(r"^\s*B\(\s*(\d+)\s*;([^;]*);([^;]*);([^;)]*)\)\s*$")


def parse_spec(text: str) -> BicirculantSpec:
    """Parse the `B(m; a1,a2,...; c1,...; b1,...)` text format."""
    m = _SPEC_RE.match(text)
    if not m:
        raise BicirculantError(f"cannot parse spec string {text!r}")

    def ints(chunk: str) -> list[int]:
        chunk = chunk.strip()
        if not chunk:
            return []
        try:
            return [int(x) for x in chunk.split(",")]
        except ValueError as exc:
            raise BicirculantError(f"bad integer list {chunk!r} in {text!r}") from exc

    return validate_spec(int(m.group(1)), ints(m.group(2)), ints(m.group(3)), ints(m.group(4)))


def spec_from_json_dict(d: dict) -> BicirculantSpec:
    return validate_spec(int(d["m"]), d.get("R", []), d.get("S", []), d.get("T", []))


def normalize(spec: BicirculantSpec) -> tuple[BicirculantSpec, int]:
    """Shift S so that 0 is a spoke type; returns (spec', c) with S' = S - c.

    The relabeling u_i -> u_i, v_i -> v_{i-c} is an isomorphism between the
    input and output graphs.
    """
    if 0 in spec.S:
        return spec, 0
    c = min(spec.S)
    s2 = tuple(sorted((x - c) % spec.m for x in spec.S))
    return BicirculantSpec(spec.m, spec.R, s2, spec.T), c


def _circulant_edges(m: int, types: tuple[int, ...], layer: str, kind: str):
    out = []
    for a in types:
        if a > m - a:
            continue  # the pair (a, m-a) is emitted once, at the smaller value
        if 2 * a == m:
            for i in range(m // 2):
                out.append((Vertex(layer, i), Vertex(layer, (i + a) % m), EdgeKind(kind, a)))
        else:
            for i in range(m):
                out.append((Vertex(layer, i), Vertex(layer, (i + a) % m), EdgeKind(kind, a)))
    return out


def edges(spec: BicirculantSpec) -> list[tuple[Vertex, Vertex, EdgeKind]]:
    """Every undirected edge exactly once (the m/2 types contribute m/2 edges)."""
    out = _circulant_edges(spec.m, spec.R, OUTER, "outer")
    out.extend(_circulant_edges(spec.m, spec.T, INNER, "inner"))
    for c in spec.S:
        for i in range(spec.m):
            out.append((u(i), v((i + c) % spec.m), EdgeKind("spoke", c)))
    return out


def edge_set(spec: BicirculantSpec) -> set[frozenset]:
    return {frozenset((x, y)) for x, y, _ in edges(spec)}


def connectivity_gcd(spec: BicirculantSpec) -> int:
    """gcd(m, R, S-c, T) with S shifted to contain 0: the component count."""
    norm, _ = normalize(spec)
    return gcd_all(norm.m, norm.R, norm.S, norm.T)


def is_connected(spec: BicirculantSpec) -> bool:
    return connectivity_gcd(spec) == 1


@dataclass(frozen=True)
class ComponentEmbedding:
    """One connected component, as a quotient spec plus the vertex embedding."""

    index: int
    quotient: BicirculantSpec
    delta: int
    vshift: int = 0  # spoke shift undone on the inner layer

    def embed(self, vtx: Vertex) -> Vertex:
        i = vtx.index * self.delta + self.index
        if vtx.layer == INNER:
            i += self.vshift
        return Vertex(vtx.layer, i % (self.quotient.m * self.delta))


def split_components(spec: BicirculantSpec) -> list[ComponentEmbedding]:
    """Decompose into delta = gcd(m,R,S-c,T) isomorphic components.

    After the spoke shift c, component i holds the vertices with index = i
    (mod delta); its quotient is B(m/delta; R/delta, (S-c)/delta, T/delta)
    under u_x -> u_{x*delta+i}, v_x -> v_{x*delta+i+c}.
    """
    norm, c = normalize(spec)
    delta = gcd_all(norm.m, norm.R, norm.S, norm.T)
    if delta == 1:
        return [ComponentEmbedding(0, norm, 1, vshift=c)]
    q = BicirculantSpec(
        norm.m // delta,
        tuple(x // delta for x in norm.R),
        tuple(x // delta for x in norm.S),
        tuple(x // delta for x in norm.T),
    )
    return [ComponentEmbedding(i, q, delta, vshift=c) for i in range(delta)]


class ExceptionTag(NamedTuple):
    tag: str  # "K2" | "AlspachGP"
    m: int


def _unit_match(m: int, pair: tuple[int, ...], target: set[int]) -> Optional[int]:
    """A unit w with w*pair = target (mod m), if one exists."""
    for r in pair:
        if math.gcd(r, m) != 1:
            continue
        w = pow(r, -1, m)
        for t in sorted(target):
            cand = (w * t) % m
            if {(cand * x) % m for x in pair} == target:
                return cand
    return None


def recognize_exception(spec: BicirculantSpec) -> Optional[ExceptionTag]:
    """Detect K2 and the Alspach generalized Petersen graphs G(m,2), m=5 mod 6.

    Detection is up to parameter symmetries only: the spoke shift, swapping
    the outer/inner roles, and relabeling by a unit of Z_m (i -> w*i).  The
    unit covers presentations like B(11;{2,9},{0},{4,7}); bicirculants that
    are abstractly isomorphic to G(m,2) without such a parameter map are not
    recognized.
    """
    norm, _ = normalize(spec)
    if norm.m == 1 and not norm.R and not norm.T and norm.S == (0,):
        return ExceptionTag("K2", 1)
    m = norm.m
    if m % 6 != 5 or norm.S != (0,) or len(norm.R) != 2 or len(norm.T) != 2:
        return None
    one = {1 % m, (-1) % m}
    two = {2 % m, (-2) % m}
    for R_, T_ in ((norm.R, norm.T), (norm.T, norm.R)):
        w = _unit_match(m, R_, one)
        if w is not None and {(w * x) % m for x in T_} == two:
            return ExceptionTag("AlspachGP", m)
    return None


def subgraph_ab(spec: BicirculantSpec, a: int, b: int) -> BicirculantSpec:
    """The spanning subgraph B(m; {a,-a}, S, {b,-b})."""
    m = spec.m
    a %= m
    b %= m
    if a not in spec.R or b not in spec.T:
        raise BicirculantError(f"a={a} not in R or b={b} not in T")
    if 2 * a == m or 2 * b == m:
        raise HalfTurnType("subgraph_ab is undefined for half-turn types")
    return BicirculantSpec(m, tuple(sorted({a, m - a})), spec.S, tuple(sorted({b, m - b})))


def haar_restrict(spec: BicirculantSpec, S_sub: Iterable[int], keep_rt: bool = False) -> BicirculantSpec:
    """B(m; 0, S', 0), or B(m; R, S', T) with keep_rt."""
    s2 = tuple(sorted({x % spec.m for x in S_sub}))
    if not s2:
        raise EmptyS("restricted S must stay nonempty")
    if not set(s2) <= set(spec.S):
        raise BicirculantError(f"{s2} is not a subset of S={spec.S}")
    if keep_rt:
        return BicirculantSpec(spec.m, spec.R, s2, spec.T)
    return BicirculantSpec(spec.m, (), s2, ())


def swap_layers(spec: BicirculantSpec) -> BicirculantSpec:
    """B(m;T,-S,R): the relabeling u_i <-> v_i.  Spokes of type c become -c."""
    s2 = tuple(sorted((-x) % spec.m for x in spec.S))
    return BicirculantSpec(spec.m, spec.T, s2, spec.R)


def swap_vertex(vtx: Vertex) -> Vertex:
    return Vertex(INNER if vtx.layer == OUTER else OUTER, vtx.index)
