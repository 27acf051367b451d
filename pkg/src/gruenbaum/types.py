from __future__ import annotations

from typing import Literal

type Color = int
type Dart = int
type EdgeId = int
type FaceId = int
type Vertex = int

type FaceColor = Literal["black", "white"]
type MapFormat = Literal["faces", "rotation"]
type Method = Literal["exact", "fallback", "koenig", "skipped", "tripartite"]
type Part = Literal["A", "B", "C"]


__all__ = [
    "Color",
    "Dart",
    "EdgeId",
    "FaceColor",
    "FaceId",
    "MapFormat",
    "Method",
    "Part",
    "Vertex",
]
