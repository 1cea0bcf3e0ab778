"""Hamilton cycles in bicirculant graphs B(m;R,S,T).

Constructive strategies (grid representations, extension, 2-hooked, brick
products, congruence cases) with an independent exhaustive oracle and
witness validation at every step.
"""

from .graph import BicirculantSpec, Vertex, parse_spec, validate_spec
from .witness import HamiltonWitness

__all__ = ["BicirculantSpec", "Vertex", "HamiltonWitness", "parse_spec", "validate_spec"]
__version__ = "0.1.0"
