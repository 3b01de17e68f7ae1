"""Graph and label containers shared by every other module.

Node indices are 0-based. Community labels are 1-based, with 0 reserved
for "unassigned" nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import IndexOutOfRangeError, SelfLoopError


@dataclass(frozen=True)
class AdjacencyMatrix:
    """Symmetric 0/1 adjacency matrix with zero diagonal.

    Dense uint8 storage; adequate at the desk scales (n up to a few
    thousand) this package targets. The underlying array is marked
    read-only so instances can be shared freely.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.uint8)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"adjacency matrix must be square, got shape {m.shape}")
        if not np.array_equal(m, m.T):
            raise ValueError("adjacency matrix must be symmetric")
        if np.any(np.diag(m) != 0):
            raise ValueError("adjacency matrix must have zero diagonal")
        if np.any(m > 1):
            raise ValueError("adjacency matrix entries must be 0 or 1")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_edge_list(cls, n: int, edges: Iterable[tuple[int, int]]) -> "AdjacencyMatrix":
        """Build an adjacency matrix from undirected edge pairs.

        Duplicate pairs are idempotent. Self-loops and out-of-range
        endpoints are rejected.
        """
        m = np.zeros((n, n), dtype=np.uint8)
        for i, j in edges:
            if i == j:
                raise SelfLoopError(f"self-loop ({i}, {j}) not allowed")
            if not (0 <= i < n and 0 <= j < n):
                raise IndexOutOfRangeError(f"edge ({i}, {j}) outside [0, {n})")
            m[i, j] = 1
            m[j, i] = 1
        return cls(m)

    def row_sums(self) -> np.ndarray:
        """Node degrees: element i is the sum of row i."""
        return self.matrix.sum(axis=1, dtype=np.int64)

    def exclude_node(self, i: int) -> "AdjacencyMatrix":
        """The (n-1)x(n-1) matrix with row and column i deleted."""
        if not (0 <= i < self.n):
            raise IndexOutOfRangeError(f"node {i} outside [0, {self.n})")
        keep = np.delete(np.arange(self.n), i)
        return AdjacencyMatrix(self.matrix[np.ix_(keep, keep)])

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (i, j) pairs with i < j, lexicographic order."""
        iu, ju = np.nonzero(np.triu(self.matrix, 1))
        return list(zip(iu.tolist(), ju.tolist()))

    def edge_count(self) -> int:
        return int(self.matrix.sum()) // 2


@dataclass(frozen=True)
class LabelVector:
    """Per-node community assignment in {0, 1, ..., k}; 0 = unassigned."""

    labels: np.ndarray
    k: int

    def __post_init__(self):
        lab = np.asarray(self.labels, dtype=np.int64)
        if lab.ndim != 1:
            raise ValueError("labels must be one-dimensional")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if lab.size and (lab.min() < 0 or lab.max() > self.k):
            raise ValueError(f"labels must lie in [0, {self.k}]")
        lab = lab.copy()
        lab.setflags(write=False)
        object.__setattr__(self, "labels", lab)

    @property
    def n(self) -> int:
        return self.labels.shape[0]

    def community_sizes(self) -> np.ndarray:
        """Size of each community 1..k; label 0 is excluded."""
        return np.bincount(self.labels, minlength=self.k + 1)[1:]


def confusion_matrix(z: LabelVector, zhat: LabelVector) -> np.ndarray:
    """k x k counts: entry (u-1, v-1) is |{i : z(i)=u, zhat(i)=v}|.

    Only positions where both labels are in [1, k] are counted.
    """
    if z.n != zhat.n:
        raise ValueError("label vectors must have equal length")
    k = max(z.k, zhat.k)
    counts = np.zeros((k, k), dtype=np.int64)
    both = (z.labels > 0) & (zhat.labels > 0)
    np.add.at(counts, (z.labels[both] - 1, zhat.labels[both] - 1), 1)
    return counts


def write_edge_list(A: AdjacencyMatrix, path: str | Path) -> None:
    """Edge-list text format: header ``n <count>``, then ``i<TAB>j`` lines."""
    lines = [f"n {A.n}"]
    lines.extend(f"{i}\t{j}" for i, j in A.edges())
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_edge_list(path: str | Path) -> AdjacencyMatrix:
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n "):
        raise ValueError(f"{path}: expected header line 'n <count>'")
    n = int(lines[0].split()[1])
    edges = []
    for ln in lines[1:]:
        i, j = ln.split("\t")
        edges.append((int(i), int(j)))
    return AdjacencyMatrix.from_edge_list(n, edges)


def write_labels(z: LabelVector, path: str | Path) -> None:
    """Label file: one integer per line, n lines."""
    Path(path).write_text("\n".join(str(v) for v in z.labels.tolist()) + "\n", encoding="utf-8")


def read_labels(path: str | Path, k: int | None = None) -> LabelVector:
    values = [int(ln) for ln in Path(path).read_text(encoding="utf-8").splitlines() if ln.strip()]
    if k is None:
        k = max(max(values, default=1), 1)
    return LabelVector(np.array(values, dtype=np.int64), k)


def labels_from_sizes(sizes: Sequence[int]) -> LabelVector:
    """Ground-truth labels (1, ..., 1, 2, ..., 2, ...) from community sizes."""
    k = len(sizes)
    return LabelVector(np.repeat(np.arange(1, k + 1), sizes), k)
