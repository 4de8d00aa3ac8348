"""Embed degree-3 planar graphs as topological minors of wall graphs."""

from .drawing import GraphInput, GridDrawing, shift_draw, validate_drawing, validate_graph
from .embedder import EmbeddingResult, compute_scale_params, embed
from .paths import WallPath
from .verifier import verify_embedding
from .wall import WallDims, WallVertex

__all__ = [
    "EmbeddingResult",
    "GraphInput",
    "GridDrawing",
    "WallDims",
    "WallPath",
    "WallVertex",
    "compute_scale_params",
    "embed",
    "shift_draw",
    "validate_drawing",
    "validate_graph",
    "verify_embedding",
]
