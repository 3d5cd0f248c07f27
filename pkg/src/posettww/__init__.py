"""Natural twin-width of posets: red posets, contraction sequences and
algorithms for bounded-width posets."""

from .errors import PosetError
from .formats import ContractionSequence, load_poset, load_sequence
from .poset import ChainPartition, Poset, chain_index, chain_partition, width
from .red_poset import RedPoset, recompute_red_from_partition
from .sequence import build_matrix, export_dot, replay_natural, replay_symmetric

__all__ = [
    "ChainPartition", "ContractionSequence", "Poset", "PosetError", "RedPoset",
    "build_matrix", "chain_index", "chain_partition", "export_dot", "load_poset",
    "load_sequence", "recompute_red_from_partition", "replay_natural",
    "replay_symmetric", "width",
]
__version__ = "0.1.0"
