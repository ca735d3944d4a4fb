"""periodlab: exact periodic-orbit structure of shift spaces.

Core objects: directed multigraphs (edge shifts), labeled graphs (sofic
shifts), gap sets, and period-set descriptors with certified tails. See the
README for the CLI and the per-module docs for the library surface.
"""

from .graph_core import DirectedMultigraph, Cycle, SccDecomposition
from .sft_counting import (
    CountTable,
    ForbiddenWordSpec,
    PeriodSetDescriptor,
)

__all__ = [
    "DirectedMultigraph",
    "Cycle",
    "SccDecomposition",
    "CountTable",
    "ForbiddenWordSpec",
    "PeriodSetDescriptor",
]
