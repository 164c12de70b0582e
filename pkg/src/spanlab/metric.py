"""Finite metric spaces: Euclidean point sets and explicit distance matrices.

Instances are immutable after construction and safe to share across threads.
"""
from __future__ import annotations

import os
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DuplicatePoint,
    ParseError,
    SizeLimitExceeded,
    SymmetryViolation,
    TriangleViolation,
)

# Full triangle-inequality scan is cubic; explicit matrices above this size
# get a seeded triple sample instead.
TRIANGLE_FULL_CHECK_CAP = 1024
TRIANGLE_REL_TOL = 1e-9
MATRIX_CAP_DEFAULT = 4096


def _pairwise_sqdist(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # Explicit coordinate differences; the dot-product expansion is not
    # bit-stable and stored weights must equal distance() exactly.
    d = a[:, None, :] - b[None, :, :]
    return np.einsum("ijk,ijk->ij", d, d)


class MetricSpace:
    """A finite metric over points 0..n-1, Euclidean or explicit-matrix backed."""

    def __init__(self, kind: str, coords: Optional[np.ndarray] = None,
                 matrix: Optional[np.ndarray] = None, validate: bool = True):
        if kind not in ("euclidean", "matrix"):
            raise ValueError(f"unknown metric kind {kind!r}")
        self.kind = kind
        if kind == "euclidean":
            if coords is None:
                raise ValueError("euclidean metric needs coords")
            coords = np.asarray(coords, dtype=np.float64)
            if coords.ndim != 2 or coords.shape[0] < 1:
                raise ParseError("coords must be a non-empty 2-D array")
            self.coords = coords
            self.coords.setflags(write=False)
            self.matrix = None
            self.n = coords.shape[0]
            self.dim = coords.shape[1]
            if validate:
                self._check_duplicates_euclidean()
        else:
            if matrix is None:
                raise ValueError("matrix metric needs a matrix")
            matrix = np.asarray(matrix, dtype=np.float64)
            if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
                raise ParseError("distance matrix must be square")
            self.matrix = matrix
            self.matrix.setflags(write=False)
            self.coords = None
            self.n = matrix.shape[0]
            self.dim = None
            if validate:
                self._validate_matrix()

    def _check_duplicates_euclidean(self) -> None:
        rows = {tuple(r) for r in self.coords.tolist()}
        if len(rows) != self.n:
            raise DuplicatePoint("coordinate rows are not pairwise distinct")

    def _validate_matrix(self) -> None:
        m = self.matrix
        if np.any(np.diagonal(m) != 0.0):
            raise ParseError("distance matrix diagonal must be zero")
        if not np.array_equal(m, m.T):
            raise SymmetryViolation("distance matrix is not symmetric")
        off = m[~np.eye(self.n, dtype=bool)]
        if off.size and np.any(off <= 0.0):
            raise DuplicatePoint("off-diagonal distances must be positive")
        n = self.n
        scale = float(m.max()) if n > 1 else 1.0
        tol = TRIANGLE_REL_TOL * max(scale, 1.0)
        if n <= TRIANGLE_FULL_CHECK_CAP:
            for k in range(n):
                if np.any(m > m[:, k][:, None] + m[k, :][None, :] + tol):
                    bad = np.argwhere(m > m[:, k][:, None] + m[k, :][None, :] + tol)[0]
                    raise TriangleViolation(
                        f"triangle inequality fails for ({bad[0]},{k},{bad[1]})")
        else:
            rng = np.random.default_rng(0)
            for _ in range(20000):
                i, j, k = rng.integers(0, n, size=3)
                if m[i, j] > m[i, k] + m[k, j] + tol:
                    raise TriangleViolation(
                        f"triangle inequality fails for ({i},{k},{j})")

    def distance(self, p: int, q: int) -> float:
        if p == q:
            return 0.0
        if self.kind == "euclidean":
            d = self.coords[p] - self.coords[q]
            return float(np.sqrt(np.einsum("k,k->", d, d)))
        return float(self.matrix[p, q])

    def distances_from(self, p: int, ids: Optional[np.ndarray] = None) -> np.ndarray:
        """Distances from p to every point in ids (default: all points)."""
        if self.kind == "euclidean":
            pts = self.coords if ids is None else self.coords[ids]
            d = pts - self.coords[p][None, :]
            return np.sqrt(np.einsum("ij,ij->i", d, d))
        row = self.matrix[p]
        return row.copy() if ids is None else row[np.asarray(ids)]

    def distance_matrix(self, ids: Optional[Sequence[int]] = None,
                        cap: int = MATRIX_CAP_DEFAULT) -> np.ndarray:
        idx = np.arange(self.n) if ids is None else np.asarray(ids, dtype=np.int64)
        if len(idx) > cap:
            raise SizeLimitExceeded(
                f"distance matrix for {len(idx)} points exceeds cap {cap}")
        if self.kind == "euclidean":
            pts = self.coords[idx]
            return np.sqrt(_pairwise_sqdist(pts, pts))
        return self.matrix[np.ix_(idx, idx)].copy()

    def restrict(self, ids: Sequence[int]) -> "MetricSpace":
        """Sub-metric over the given point ids, renumbered 0..len(ids)-1."""
        idx = np.asarray(ids, dtype=np.int64)
        if self.kind == "euclidean":
            return MetricSpace("euclidean", coords=self.coords[idx].copy(),
                               validate=False)
        return MetricSpace("matrix", matrix=self.matrix[np.ix_(idx, idx)].copy(),
                           validate=False)


def generate_points(name: str, n: int, dim: int = 2, seed: int = 0,
                    clusters: int = 4) -> MetricSpace:
    """Deterministic seeded point-set families: uniform, clustered, grid, line."""
    if n < 1:
        raise ParseError("generator needs n >= 1")
    rng = np.random.default_rng(seed)
    if name == "uniform":
        coords = rng.random((n, dim))
    elif name == "clustered":
        k = max(1, min(clusters, n))
        centers = rng.random((k, dim))
        assign = np.arange(n) % k
        coords = centers[assign] + rng.normal(0.0, 0.02, size=(n, dim))
    elif name == "grid":
        side = 1
        while side ** dim < n:
            side += 1
        cells = np.stack(np.meshgrid(*[np.arange(side)] * dim, indexing="ij"),
                         axis=-1).reshape(-1, dim)
        coords = cells[:n].astype(np.float64)
    elif name == "line":
        coords = np.zeros((n, dim))
        coords[:, 0] = np.arange(n, dtype=np.float64)
    else:
        raise ParseError(f"unknown generator {name!r}")
    return MetricSpace("euclidean", coords=coords)


def parse_generator_spec(spec: str) -> MetricSpace:
    """Parse "uniform:n=256,dim=2,seed=7" (or comma after the name)."""
    body = spec[4:] if spec.startswith("gen:") else spec
    if ":" in body:
        name, rest = body.split(":", 1)
    elif "," in body:
        name, rest = body.split(",", 1)
    else:
        name, rest = body, ""
    params = {}
    for piece in filter(None, rest.split(",")):
        if "=" not in piece:
            raise ParseError(f"bad generator parameter {piece!r}")
        key, val = piece.split("=", 1)
        try:
            params[key.strip()] = int(val)
        except ValueError as exc:
            raise ParseError(f"generator parameter {piece!r} is not an integer") from exc
    n = params.pop("n", None)
    if n is None:
        raise ParseError("generator spec needs n=<count>")
    dim = params.pop("dim", 2)
    seed = params.pop("seed", 0)
    clusters = params.pop("k", params.pop("clusters", 4))
    if params:
        raise ParseError(f"unknown generator parameters {sorted(params)}")
    return generate_points(name.strip(), n=n, dim=dim, seed=seed, clusters=clusters)


def load_metric(source: str) -> MetricSpace:
    """Load from a generator spec, a coordinate CSV, or an explicit matrix file.

    CSV: one point per line, comma-separated coordinates, no header.
    Matrix: first line is n, then n whitespace-separated rows.
    """
    if source.startswith("gen:"):
        return parse_generator_spec(source)
    if not os.path.exists(source):
        if ":" in source or "=" in source:
            return parse_generator_spec(source)
        raise ParseError(f"no such file: {source}")
    with open(source, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise ParseError(f"{source} is empty")
    first = lines[0].split()
    if len(first) == 1 and "," not in lines[0]:
        try:
            n = int(first[0])
        except ValueError as exc:
            raise ParseError(f"{source}: bad matrix header {lines[0]!r}") from exc
        if len(lines) != n + 1:
            raise ParseError(f"{source}: expected {n} matrix rows, got {len(lines) - 1}")
        try:
            rows = [[float(x) for x in ln.split()] for ln in lines[1:]]
        except ValueError as exc:
            raise ParseError(f"{source}: non-numeric matrix entry") from exc
        if any(len(r) != n for r in rows):
            raise ParseError(f"{source}: ragged matrix row")
        return MetricSpace("matrix", matrix=np.array(rows, dtype=np.float64))
    try:
        rows = [[float(x) for x in ln.split(",")] for ln in lines]
    except ValueError as exc:
        raise ParseError(f"{source}: non-numeric coordinate") from exc
    width = len(rows[0])
    if width < 1 or any(len(r) != width for r in rows):
        raise ParseError(f"{source}: ragged coordinate row")
    return MetricSpace("euclidean", coords=np.array(rows, dtype=np.float64))


def save_metric(m: MetricSpace, path: str) -> None:
    """Write in the matching load format; load_metric round-trips bit-exactly."""
    with open(path, "w", encoding="utf-8") as fh:
        if m.kind == "euclidean":
            for row in m.coords:
                fh.write(",".join(repr(float(x)) for x in row) + "\n")
        else:
            fh.write(f"{m.n}\n")
            for row in m.matrix:
                fh.write(" ".join(repr(float(x)) for x in row) + "\n")
