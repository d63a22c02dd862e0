"""Equivariant complex data, coset actions, quotient complexes and twisted
cochain complexes, plus the exact basis identification between them.

A cell of the base complex Y is stored as the ordered tuple of its lifted
vertices ``(word, base_vertex)``: the vertex ``word . base_vertex`` of the
universal cover. Boundaries over the group ring are derived from this data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from hdx.errors import DegreeOutOfRange, InvalidGammaData, InvalidPermutation, NotSimplicial
from hdx.group_ring import (
    GroupRingElement,
    GroupRingMatrix,
    Word,
    evaluate_matrix,
    reduce_word,
    word_inverse,
    word_permutation,
    word_product,
)
from hdx.hodge import CochainComplex
from hdx.simplicial import SimplicialComplex, build_complex, coboundary_matrix, validate_complex

DecoratedVertex = tuple[Word, int]
Cell = tuple[DecoratedVertex, ...]


def _parity(seq: Sequence[int]) -> int:
    seen = [False] * len(seq)
    sign = 1
    for i in range(len(seq)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = seq[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class CosetAction:
    """Right action of the generators on the cosets ``0..N-1``.

    ``perms[g][x]`` is the coset ``x . g`` for generator ``g + 1``.
    """

    N: int
    perms: tuple[tuple[int, ...], ...]
    identity_coset: int = 0
    label: str = ""

    def __post_init__(self):
        perms = tuple(tuple(int(x) for x in p) for p in self.perms)
        object.__setattr__(self, "perms", perms)
        if self.N < 1:
            raise InvalidPermutation(f"index must be positive, got {self.N}")
        for g, p in enumerate(perms):
            if len(p) != self.N:
                raise InvalidPermutation(f"generator {g + 1}: {len(p)} images for {self.N} cosets")
            if sorted(p) != list(range(self.N)):
                raise InvalidPermutation(f"generator {g + 1}: not a bijection of 0..{self.N - 1}")
        if not 0 <= self.identity_coset < self.N:
            raise InvalidPermutation(f"identity coset {self.identity_coset} out of range")

    def perm_arrays(self) -> list[np.ndarray]:
        return [np.asarray(p, dtype=np.int64) for p in self.perms]

    def inverse_arrays(self) -> list[np.ndarray]:
        return [np.argsort(p) for p in self.perm_arrays()]

    def act(self, w: Word) -> np.ndarray:
        """Array sending coset x to x . w."""
        return word_permutation(w, self.perm_arrays(), self.inverse_arrays(), self.N)

    def to_json(self) -> dict:
        out = {"N": self.N, "perms": [list(p) for p in self.perms]}
        if self.identity_coset:
            out["identity_coset"] = self.identity_coset
        if self.label:
            out["label"] = self.label
        return out

    @classmethod
    def from_json(cls, data: dict) -> "CosetAction":
        return cls(int(data["N"]), tuple(tuple(p) for p in data["perms"]),
                   int(data.get("identity_coset", 0)), str(data.get("label", "")))


def coset_action_from_perms(perms: Sequence[Sequence[int]], N: int, label: str = "") -> CosetAction:
    return CosetAction(N, tuple(tuple(p) for p in perms), 0, label)


@dataclass(frozen=True)
class Face:
    """Face ``k`` of a cell equals ``gamma . cells[l-1][target]`` with orientation ``sign``."""

    k: int
    target: int
    gamma: Word
    sign: int
    # cell-vertex index p of the target maps to face vertex order[p] of the source cell
    order: tuple[int, ...]


@dataclass(frozen=True)
class GammaComplexData:
    generator_count: int
    cells: tuple[tuple[Cell, ...], ...]
    faces: tuple[tuple[tuple[Face, ...], ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        cells = tuple(
            tuple(tuple((reduce_word(w), int(v)) for w, v in cell) for cell in deg)
            for deg in self.cells
        )
        object.__setattr__(self, "cells", cells)
        if not cells:
            raise InvalidGammaData("no cells")
        for i, cell in enumerate(cells[0]):
            if cell != (((), i),):
                raise InvalidGammaData(f"vertex cell {i} must be ((), {i}), got {cell}")
        lookup = []
        for l, deg in enumerate(cells):
            table = {}
            for i, cell in enumerate(deg):
                if len(cell) != l + 1:
                    raise InvalidGammaData(f"cell {i} of degree {l} has {len(cell)} vertices")
                base = [v for _, v in cell]
                if any(not 0 <= v < len(cells[0]) for v in base):
                    raise InvalidGammaData(f"cell {i} of degree {l}: unknown base vertex")
                for w, _ in cell:
                    if any(abs(x) > self.generator_count for x in w):
                        raise InvalidGammaData(f"cell {i} of degree {l}: unknown generator in {w}")
                if len(set(base)) != len(base):
                    raise InvalidGammaData(f"cell {i} of degree {l} repeats a base vertex")
                key = frozenset(base)
                if key in table:
                    raise InvalidGammaData(f"cells {table[key]} and {i} of degree {l} share base vertices")
                table[key] = i
            lookup.append(table)
        faces = [tuple(tuple() for _ in cells[0])]
        for l in range(1, len(cells)):
            faces.append(tuple(self._match_faces(cells, lookup, l, i) for i in range(len(cells[l]))))
        object.__setattr__(self, "faces", tuple(faces))

    @staticmethod
    def _match_faces(cells, lookup, l, i) -> tuple[Face, ...]:
        cell = cells[l][i]
        out = []
        for k in range(l + 1):
            positions = [m for m in range(l + 1) if m != k]
            key = frozenset(cell[m][1] for m in positions)
            j = lookup[l - 1].get(key)
            if j is None:
                raise InvalidGammaData(f"face {k} of cell {i} in degree {l} is not a cell of degree {l - 1}")
            target = cells[l - 1][j]
            order = tuple(next(m for m in positions if cell[m][1] == v) for _, v in target)
            gamma = word_product(cell[order[0]][0], word_inverse(target[0][0]))
            sign = _parity([positions.index(m) for m in order])
            out.append(Face(k, j, gamma, sign, order))
        return tuple(out)

    @property
    def top(self) -> int:
        return len(self.cells) - 1

    def count(self, l: int) -> int:
        return len(self.cells[l])

    def coboundary_symbol(self, l: int) -> GroupRingMatrix:
        """Matrix ``A_l`` of the dual boundary: row i (degree l), column j (degree l-1)
        holds the coefficient of cell j in the boundary of cell i."""
        if not 1 <= l <= self.top:
            raise DegreeOutOfRange(f"no boundary symbol in degree {l}")
        rows = [[GroupRingElement() for _ in self.cells[l - 1]] for _ in self.cells[l]]
        for i, faces in enumerate(self.faces[l]):
            for f in faces:
                rows[i][f.target] = rows[i][f.target] + GroupRingElement.word(
                    f.gamma, (-1) ** f.k * f.sign)
        return GroupRingMatrix.from_rows(rows, self.count(l - 1))

    def boundary_gr(self, l: int) -> GroupRingMatrix:
        """Stored boundary ``iota(A_l)^T``; column i is the boundary of cell i.

        Evaluated under a coset action it is the boundary map on twisted chains.
        """
        return self.coboundary_symbol(l).involute_transpose()

    def base_degrees(self, l: int) -> np.ndarray:
        """Number of degree-l cells of Y containing each base vertex."""
        deg = np.zeros(self.count(0), dtype=np.int64)
        for cell in self.cells[l]:
            for _, v in cell:
                deg[v] += 1
        return deg

    def to_json(self) -> dict:
        return {
            "generators": self.generator_count,
            "cells": {
                str(l): [[{"w": list(w), "v": v} for w, v in cell] for cell in deg]
                for l, deg in enumerate(self.cells)
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "GammaComplexData":
        raw = data["cells"]
        degrees = sorted(int(k) for k in raw)
        if degrees != list(range(len(degrees))):
            raise InvalidGammaData(f"cell degrees must be 0..n, got {degrees}")
        cells = []
        for l in degrees:
            deg = []
            for cell in raw[str(l)]:
                if isinstance(cell, int):
                    cell = [{"w": [], "v": cell}]
                elif isinstance(cell, dict):
                    cell = [cell]
                deg.append(tuple((tuple(x.get("w", [])), int(x["v"])) for x in cell))
            cells.append(tuple(deg))
        return cls(int(data["generators"]), tuple(cells))

    def truncate(self, n: int) -> "GammaComplexData":
        return GammaComplexData(self.generator_count, self.cells[: n + 1])


def validate_gamma_data(G: GammaComplexData, actions: Sequence[CosetAction]) -> list[str]:
    """Check the datum against each action; an empty list means valid."""
    problems = []
    for a_idx, act in enumerate(actions):
        name = act.label or f"action {a_idx}"
        if len(act.perms) < G.generator_count:
            problems.append(f"{name}: {len(act.perms)} generator permutations, datum uses {G.generator_count}")
            continue
        for l in range(1, G.top + 1):
            for i, faces in enumerate(G.faces[l]):
                cell = G.cells[l][i]
                for f in faces:
                    target = G.cells[l - 1][f.target]
                    for p, m in enumerate(f.order):
                        lhs = act.act(word_product(f.gamma, target[p][0]))
                        if not np.array_equal(lhs, act.act(cell[m][0])):
                            problems.append(
                                f"{name}: face {f.k} of cell {i} (degree {l}) does not match "
                                f"translate of cell {f.target}")
                            break
            for i, cell in enumerate(G.cells[l]):
                pts = np.stack([v * act.N + act.act(w) for w, v in cell])
                for j in range(act.N):
                    if len(set(pts[:, j].tolist())) != len(cell):
                        problems.append(f"{name}: vertices of cell {i} (degree {l}) collide over coset {j}")
                        break
        for l in range(1, G.top):
            prod = evaluate_matrix(G.coboundary_symbol(l + 1), act) @ evaluate_matrix(G.coboundary_symbol(l), act)
            if np.any(prod != 0):
                problems.append(f"{name}: boundary composition nonzero at degree {l}")
        if not problems:
            try:
                _lift_all(G, act)
            except NotSimplicial as exc:
                problems.append(f"{name}: {exc}")
    return problems


def _lift(G: GammaComplexData, act: CosetAction, l: int) -> list[tuple[tuple[int, ...], int]]:
    """(sorted vertex tuple, orientation sign) of the quotient simplex for each
    twisted index ``i * N + j``."""
    N = act.N
    out = []
    for cell in G.cells[l]:
        verts = np.stack([v * N + act.act(w) for w, v in cell])
        for j in range(N):
            col = verts[:, j].tolist()
            order = sorted(range(len(col)), key=col.__getitem__)
            if len(set(col)) != len(col):
                raise NotSimplicial(f"decorated vertices of a degree-{l} cell collide over coset {j}")
            out.append((tuple(col[o] for o in order), _parity(order)))
    return out


def _lift_all(G: GammaComplexData, act: CosetAction, top: int | None = None):
    top = G.top if top is None else min(top, G.top)
    lifts = []
    for l in range(top + 1):
        lift = _lift(G, act, l)
        seen: dict[tuple[int, ...], int] = {}
        for t, (s, _) in enumerate(lift):
            if s in seen:
                i1, j1 = divmod(seen[s], act.N)
                i2, j2 = divmod(t, act.N)
                raise NotSimplicial(
                    f"degree {l}: cells ({i1}, coset {j1}) and ({i2}, coset {j2}) have the same vertex set")
            seen[s] = t
        lifts.append(lift)
    return lifts


def quotient_complex(G: GammaComplexData, act: CosetAction, top: int | None = None) -> SimplicialComplex:
    """The quotient complex; vertex ``v * N + x`` is the image of base vertex v over coset x."""
    problems = validate_gamma_data(G, [act])
    if problems:
        if any("same vertex set" in p or "collide" in p for p in problems):
            raise NotSimplicial("; ".join(problems))
        raise InvalidGammaData("; ".join(problems))
    lifts = _lift_all(G, act, top)
    K = build_complex([s for lift in lifts for s, _ in lift], vertex_count=G.count(0) * act.N)
    expected = [len(lift) for lift in lifts]
    if K.counts() != expected or validate_complex(K):
        raise InvalidGammaData(f"quotient has simplex counts {K.counts()}, expected {expected}")
    return K


@dataclass(frozen=True)
class ShapiroBijection:
    """``forward[i * N + j] = (quotient simplex index, sign)``."""

    degree: int
    N: int
    forward: tuple[tuple[int, int], ...]

    @cached_property
    def inverse(self) -> dict[int, tuple[int, int, int]]:
        return {q: (t // self.N, t % self.N, s) for t, (q, s) in enumerate(self.forward)}

    def matrix(self) -> np.ndarray:
        """Signed permutation T with T[q, t] = sign."""
        n = len(self.forward)
        T = np.zeros((n, n), dtype=np.int64)
        for t, (q, s) in enumerate(self.forward):
            T[q, t] = s
        return T


def shapiro_bijection(G: GammaComplexData, act: CosetAction, l: int,
                      K: SimplicialComplex | None = None) -> ShapiroBijection:
    if not 0 <= l <= G.top:
        raise DegreeOutOfRange(f"degree {l} outside [0, {G.top}]")
    if K is None:
        K = quotient_complex(G, act)
    lift = _lift(G, act, l)
    return ShapiroBijection(l, act.N, tuple((K.index[l][s], sign) for s, sign in lift))


def twisted_coboundary(G: GammaComplexData, act: CosetAction, l: int) -> np.ndarray:
    """Block matrix of ``d_l`` on C^l(Gamma, L^2(cosets)), shape (|Y^{l+1}| N, |Y^l| N)."""
    if not 0 <= l < G.top:
        raise DegreeOutOfRange(f"twisted coboundary needs 0 <= l < {G.top}, got {l}")
    return evaluate_matrix(G.coboundary_symbol(l + 1), act)


def twisted_complex(G: GammaComplexData, act: CosetAction, top: int | None = None) -> CochainComplex:
    top = G.top if top is None else min(top, G.top)
    d = [twisted_coboundary(G, act, l) for l in range(top)]
    d.append(np.zeros((0, G.count(top) * act.N), dtype=np.int64))
    return CochainComplex(d)


@dataclass(frozen=True)
class ShapiroReport:
    degree: int
    bijection: ShapiroBijection
    matrices_equal: bool
    max_entry_diff: int

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "N": self.bijection.N,
            "bijection": [[q, s] for q, s in self.bijection.forward],
            "matrices_equal": self.matrices_equal,
            "max_entry_diff": self.max_entry_diff,
        }


def verify_shapiro(G: GammaComplexData, act: CosetAction, l: int,
                   bijections: tuple[ShapiroBijection, ShapiroBijection] | None = None) -> ShapiroReport:
    """Compare the quotient coboundary, conjugated by the signed basis
    bijections in degrees l and l+1, with the twisted coboundary entrywise."""
    if not 0 <= l < G.top:
        raise DegreeOutOfRange(f"need 0 <= l < {G.top}, got {l}")
    K = quotient_complex(G, act)
    if bijections is None:
        bijections = (shapiro_bijection(G, act, l, K), shapiro_bijection(G, act, l + 1, K))
    low, high = bijections
    conj = high.matrix().T @ coboundary_matrix(K, l) @ low.matrix()
    twisted = twisted_coboundary(G, act, l)
    diff = int(np.max(np.abs(conj - twisted))) if conj.size else 0
    return ShapiroReport(l, low, diff == 0, diff)
