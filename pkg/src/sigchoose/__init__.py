"""List coloring of signed planar graphs.

Signed graphs and switching (:mod:`.core`), plane embeddings (:mod:`.planar`),
exact search (:mod:`.solver`), constructive colorers for 5-lists
(:mod:`.choose5`) and for 3-lists at girth 5 (:mod:`.girth5`), the
non-choosability constructions (:mod:`.gadgets`) and the discharging audit
(:mod:`.discharging`).
"""

from .core import SignedGraph, build_signed_graph, switch, verify_coloring
from .kernels import BACKEND
from .solver import solve

__all__ = ["BACKEND", "SignedGraph", "build_signed_graph", "solve", "switch", "verify_coloring"]
__version__ = "0.1.0"
