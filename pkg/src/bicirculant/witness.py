"""Hamilton cycle / path certificates: the package's unit of truth."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .graph import Vertex, parse_vertex


@dataclass(frozen=True)
class HamiltonWitness:
    kind: str  # "cycle" | "path"
    sequence: tuple[Vertex, ...]
    start: Optional[Vertex] = None
    end: Optional[Vertex] = None
    # metadata for reports; never consulted by the checker
    note: dict = field(default_factory=dict, compare=False)

    @staticmethod
    def cycle(seq, note: Optional[dict] = None) -> "HamiltonWitness":
        return HamiltonWitness("cycle", tuple(seq), note=note or {})

    @staticmethod
    def path(seq, note: Optional[dict] = None) -> "HamiltonWitness":
        seq = tuple(seq)
        return HamiltonWitness("path", seq, start=seq[0], end=seq[-1], note=note or {})

    def shifted(self, d: int, m: int) -> "HamiltonWitness":
        """Add d to every subscript; an automorphism of any B(m;R,S,T)."""
        seq = tuple(Vertex(x.layer, (x.index + d) % m) for x in self.sequence)
        if self.kind == "cycle":
            return HamiltonWitness("cycle", seq, note=dict(self.note))
        return HamiltonWitness("path", seq, start=seq[0], end=seq[-1], note=dict(self.note))

    def mapped(self, f) -> "HamiltonWitness":
        seq = tuple(f(x) for x in self.sequence)
        if self.kind == "cycle":
            return HamiltonWitness("cycle", seq, note=dict(self.note))
        return HamiltonWitness("path", seq, start=seq[0], end=seq[-1], note=dict(self.note))

    def to_json_list(self) -> list[str]:
        return [str(x) for x in self.sequence]

    @staticmethod
    def from_json(kind: str, names: list[str]) -> "HamiltonWitness":
        seq = tuple(parse_vertex(s) for s in names)
        if kind == "cycle":
            return HamiltonWitness.cycle(seq)
        return HamiltonWitness.path(seq)
