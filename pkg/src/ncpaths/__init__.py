"""Non-crossing shortest paths between boundary terminal pairs of
undirected unweighted planar graphs, with independent verification oracles.
"""

from .embedding import PlanarEmbedding, build_embedding, load_instance
from .errors import NcpathsError

__all__ = [
    "PlanarEmbedding",
    "build_embedding",
    "load_instance",
    "NcpathsError",
]

__version__ = "0.1.0"
