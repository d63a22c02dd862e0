"""Finite abstract simplicial complexes and their integer (co)boundary matrices.

Simplices are stored as strictly increasing vertex tuples. The boundary of
``(v_0 < ... < v_l)`` is the alternating sum of its faces, the face omitting
``v_i`` carrying sign ``(-1)**i``.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from hdx.errors import DegreeOutOfRange, InvalidFacet

Simplex = tuple[int, ...]


@dataclass(frozen=True)
class SimplicialComplex:
    vertex_count: int
    simplices: tuple[tuple[Simplex, ...], ...]
    index: tuple[dict[Simplex, int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        simplices = tuple(tuple(tuple(s) for s in deg) for deg in self.simplices)
        object.__setattr__(self, "simplices", simplices)
        object.__setattr__(
            self, "index", tuple({s: i for i, s in enumerate(deg)} for deg in simplices)
        )

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def count(self, l: int) -> int:
        if 0 <= l <= self.dim:
            return len(self.simplices[l])
        return 0

    def counts(self) -> list[int]:
        return [len(deg) for deg in self.simplices]

    def facets(self) -> list[Simplex]:
        """Maximal simplices, lowest degree first."""
        covered: set[Simplex] = set()
        for deg in self.simplices[1:]:
            for s in deg:
                covered.update(combinations(s, len(s) - 1))
        return [s for deg in self.simplices for s in deg if s not in covered]


def build_complex(facets: Iterable[Sequence[int]], vertex_count: int | None = None) -> SimplicialComplex:
    """Downward closure of ``facets``.

    Vertex ids must cover ``0..vertex_count-1``; when ``vertex_count`` is
    omitted it is ``max id + 1`` and isolated ids become isolated vertices.
    """
    by_degree: dict[int, set[Simplex]] = {}
    top = 0
    seen_max = -1
    for facet in facets:
        verts = tuple(int(v) for v in facet)
        if not verts:
            continue
        if len(set(verts)) != len(verts):
            raise InvalidFacet(f"repeated vertex in facet {tuple(facet)}")
        if min(verts) < 0:
            raise InvalidFacet(f"negative vertex id in facet {tuple(facet)}")
        verts = tuple(sorted(verts))
        seen_max = max(seen_max, verts[-1])
        top = max(top, len(verts) - 1)
        for k in range(1, len(verts) + 1):
            by_degree.setdefault(k - 1, set()).update(combinations(verts, k))
    if vertex_count is None:
        vertex_count = seen_max + 1
    elif seen_max >= vertex_count:
        raise InvalidFacet(f"vertex id {seen_max} exceeds vertex_count {vertex_count}")
    by_degree[0] = {(v,) for v in range(vertex_count)}
    simplices = tuple(tuple(sorted(by_degree.get(l, ()))) for l in range(top + 1))
    return SimplicialComplex(vertex_count, simplices)


def _check_degree(K: SimplicialComplex, l: int, lo: int, hi: int):
    if not lo <= l <= hi:
        raise DegreeOutOfRange(f"degree {l} outside [{lo}, {hi}]")


def boundary_matrix(K: SimplicialComplex, l: int) -> np.ndarray:
    """Integer matrix of the boundary map C_l -> C_{l-1}, shape (|K_{l-1}|, |K_l|)."""
    _check_degree(K, l, 1, K.dim)
    rows = K.index[l - 1]
    B = np.zeros((K.count(l - 1), K.count(l)), dtype=np.int64)
    for col, s in enumerate(K.simplices[l]):
        for i in range(len(s)):
            B[rows[s[:i] + s[i + 1:]], col] = -1 if i % 2 else 1
    return B


def coboundary_matrix(K: SimplicialComplex, l: int) -> np.ndarray:
    """Integer matrix of d_l: C^l -> C^{l+1}.

    At the top degree this is the empty ``(0, |K_l|)`` matrix.
    """
    _check_degree(K, l, 0, K.dim)
    if l == K.dim:
        return np.zeros((0, K.count(l)), dtype=np.int64)
    return boundary_matrix(K, l + 1).T.copy()


def vertex_degrees(K: SimplicialComplex, l: int) -> np.ndarray:
    """Number of l-simplices containing each vertex."""
    _check_degree(K, l, 0, K.dim)
    deg = np.zeros(K.vertex_count, dtype=np.int64)
    for s in K.simplices[l]:
        deg[list(s)] += 1
    return deg


def vertex_degree_profile(K: SimplicialComplex, l: int) -> Counter:
    return Counter(vertex_degrees(K, l).tolist())


def validate_complex(K: SimplicialComplex) -> list[str]:
    """Return a list of problems; empty means ``K`` is a valid complex."""
    problems = []
    if K.dim < 0:
        return problems
    if list(K.simplices[0]) != [(v,) for v in range(K.vertex_count)]:
        problems.append("vertex list is not exactly 0..vertex_count-1")
    for l, deg in enumerate(K.simplices):
        if len(set(deg)) != len(deg):
            problems.append(f"duplicate simplices in degree {l}")
        for s in deg:
            if len(s) != l + 1:
                problems.append(f"simplex {s} has wrong length for degree {l}")
            elif any(a >= b for a, b in zip(s, s[1:])):
                problems.append(f"simplex {s} is not strictly increasing")
            elif l > 0:
                for face in combinations(s, l):
                    if face not in K.index[l - 1]:
                        problems.append(f"closure violation: face {face} of {s} missing")
    if problems:
        return problems
    for l in range(1, K.dim):
        prod = boundary_matrix(K, l) @ boundary_matrix(K, l + 1)
        if np.any(prod):
            problems.append(f"boundary composition nonzero at degree {l}")
    return problems


def matrix_to_csv(M: np.ndarray) -> str:
    """Coordinate-list (row, col, value) triples of the nonzero entries."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row", "col", "value"])
    for r, c in zip(*np.nonzero(M)):
        w.writerow([int(r), int(c), int(M[r, c])])
    return buf.getvalue()
