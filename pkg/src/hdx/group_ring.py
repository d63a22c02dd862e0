"""Formal group-ring arithmetic over words in generators.

A word is a tuple of nonzero ints: ``k`` is generator ``k`` (1-based) and
``-k`` its inverse. Words are kept freely reduced. Equality is free-group
equality; relations of the group only become visible after evaluating
under a coset action.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from hdx.errors import DimensionMismatch, UnknownGenerator

Word = tuple[int, ...]


def reduce_word(letters: Iterable[int]) -> Word:
    out: list[int] = []
    for x in letters:
        x = int(x)
        if x == 0:
            raise ValueError("0 is not a generator letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def word_inverse(w: Word) -> Word:
    return tuple(-x for x in reversed(w))


def word_product(u: Word, v: Word) -> Word:
    return reduce_word(u + v)


class GroupRingElement:
    """Finite formal sum of words with nonzero rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Fraction | int] | None = None):
        clean: dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            w = reduce_word(w)
            c = clean.get(w, Fraction(0)) + Fraction(c)
            if c:
                clean[w] = c
            else:
                clean.pop(w, None)
        self.terms = clean

    @classmethod
    def one(cls) -> "GroupRingElement":
        return cls({(): 1})

    @classmethod
    def zero(cls) -> "GroupRingElement":
        return cls()

    @classmethod
    def word(cls, w: Sequence[int], coeff=1) -> "GroupRingElement":
        return cls({tuple(w): coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GroupRingElement({(): other})
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = _coerce(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return GroupRingElement(terms)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        terms: dict[Word, Fraction] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = word_product(u, v)
                terms[w] = terms.get(w, 0) + a * b
        return GroupRingElement(terms)

    def __rmul__(self, other):
        return _coerce(other) * self

    def involute(self) -> "GroupRingElement":
        """sum z_g g  ->  sum conj(z_g) g^{-1} (coefficients are real)."""
        return GroupRingElement({word_inverse(w): c for w, c in self.terms.items()})

    def l1_norm(self) -> Fraction:
        return sum((abs(c) for c in self.terms.values()), Fraction(0))

    def generators(self) -> set[int]:
        return {abs(x) for w in self.terms for x in w}

    def to_json(self) -> list[dict]:
        return [
            {"coeff": _frac_str(c), "word": list(w)}
            for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))
        ]

    @classmethod
    def from_json(cls, data: list[dict]) -> "GroupRingElement":
        return cls({tuple(t["word"]): Fraction(t["coeff"]) for t in data})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            name = "*".join(f"g{x}" if x > 0 else f"g{-x}^-1" for x in w) or "1"
            parts.append(f"{c}*{name}" if c != 1 else name)
        return " + ".join(parts)


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _coerce(x) -> GroupRingElement:
    if isinstance(x, GroupRingElement):
        return x
    if isinstance(x, (int, Fraction)):
        return GroupRingElement({(): x})
    raise TypeError(f"cannot use {type(x).__name__} as a group-ring element")


def gr_add(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    return a + b


def gr_multiply(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    return a * b


def gr_involute(a: GroupRingElement) -> GroupRingElement:
    return a.involute()


@dataclass(frozen=True)
class GroupRingMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[GroupRingElement, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(_coerce(x) for x in row) for row in self.entries)
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise DimensionMismatch(f"entries do not form a {self.rows}x{self.cols} matrix")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "GroupRingMatrix":
        z = GroupRingElement()
        return cls(rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "GroupRingMatrix":
        one, z = GroupRingElement.one(), GroupRingElement()
        return cls(n, n, tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "GroupRingMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __add__(self, other: "GroupRingMatrix") -> "GroupRingMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in sum")
        return GroupRingMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries)
        ))

    def __matmul__(self, other: "GroupRingMatrix") -> "GroupRingMatrix":
        return grm_product(self, other)

    def involute_transpose(self) -> "GroupRingMatrix":
        return grm_involute_transpose(self)

    def is_zero(self) -> bool:
        return not any(x for row in self.entries for x in row)

    def generators(self) -> set[int]:
        return set().union(*(x.generators() for row in self.entries for x in row))

    def to_json(self) -> list:
        return [[x.to_json() for x in row] for row in self.entries]

    @classmethod
    def from_json(cls, data: list, cols: int | None = None) -> "GroupRingMatrix":
        return cls.from_rows([[GroupRingElement.from_json(x) for x in row] for row in data], cols)


def grm_product(A: GroupRingMatrix, B: GroupRingMatrix) -> GroupRingMatrix:
    if A.cols != B.rows:
        raise DimensionMismatch(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    entries = []
    for i in range(A.rows):
        row = []
        for j in range(B.cols):
            acc = GroupRingElement()
            for k in range(A.cols):
                a, b = A.entries[i][k], B.entries[k][j]
                if a and b:
                    acc = acc + a * b
            row.append(acc)
        entries.append(tuple(row))
    return GroupRingMatrix(A.rows, B.cols, tuple(entries))


def grm_involute_transpose(A: GroupRingMatrix) -> GroupRingMatrix:
    """iota applied entrywise, then transposed."""
    return GroupRingMatrix(A.cols, A.rows, tuple(
        tuple(A.entries[i][j].involute() for i in range(A.rows)) for j in range(A.cols)
    ))


def laplacian_symbol(a_low: GroupRingMatrix | None, a_high: GroupRingMatrix | None,
                     size: int | None = None) -> GroupRingMatrix:
    """``iota(A_high)^T A_high + A_low iota(A_low)^T``.

    ``a_low`` maps degree l-1 into degree l (shape |Y^l| x |Y^{l-1}|) and
    ``a_high`` maps degree l into l+1 (shape |Y^{l+1}| x |Y^l|). Either may
    be ``None`` at the ends of the truncation; ``size`` = |Y^l| is then
    needed only when both are absent.
    """
    n = a_high.cols if a_high is not None else a_low.rows if a_low is not None else size
    if n is None:
        raise DimensionMismatch("size required when both symbols are absent")
    if a_high is not None and a_low is not None and a_high.cols != a_low.rows:
        raise DimensionMismatch(f"A_(l+1) has {a_high.cols} columns, A_l has {a_low.rows} rows")
    D = GroupRingMatrix.zeros(n, n)
    if a_high is not None:
        D = D + a_high.involute_transpose() @ a_high
    if a_low is not None:
        D = D + a_low @ a_low.involute_transpose()
    return D


def coboundary_norm_bound_sq(A: GroupRingMatrix) -> Fraction:
    """Square of sum over entries of (l1 norm of the entry)**2."""
    return sum((x.l1_norm() ** 2 for row in A.entries for x in row), Fraction(0))


def coboundary_norm_bound(A: GroupRingMatrix) -> float:
    """Bound on the operator norm of A evaluated in any unitary representation."""
    return float(coboundary_norm_bound_sq(A)) ** 0.5


def word_permutation(w: Word, perms: Sequence[np.ndarray], inverses: Sequence[np.ndarray] | None = None,
                     N: int | None = None) -> np.ndarray:
    """Right action of a word on cosets: ``x . (g h) = (x . g) . h``."""
    if N is None:
        N = len(perms[0]) if perms else 1
    if inverses is None:
        inverses = [np.argsort(p) for p in perms]
    x = np.arange(N)
    for letter in w:
        g = abs(letter) - 1
        if g >= len(perms):
            raise UnknownGenerator(f"generator {abs(letter)} not in action with {len(perms)} generators")
        x = (perms[g] if letter > 0 else inverses[g])[x]
    return x


def _evaluate_into(out: np.ndarray, a: GroupRingElement, perms, inverses, r0: int, c0: int, N: int):
    rows = np.arange(N)
    for w, c in a.terms.items():
        p = word_permutation(w, perms, inverses, N)
        out[r0 + rows, c0 + p] += c if out.dtype == object else int(c) if c.denominator == 1 else float(c)


def _dtype_for(coeffs) -> type:
    return np.int64 if all(c.denominator == 1 for c in coeffs) else object


def evaluate(a: GroupRingElement, act) -> np.ndarray:
    """Matrix of ``a`` in the permutation representation of ``act``.

    Row x, column x.w carries the coefficient of w. Integer coefficients give
    an int64 array, otherwise an object array of Fractions.
    """
    perms, inverses, N = act.perm_arrays(), act.inverse_arrays(), act.N
    out = np.zeros((N, N), dtype=_dtype_for(a.terms.values()))
    if out.dtype == object:
        out[:] = Fraction(0)
    _evaluate_into(out, a, perms, inverses, 0, 0, N)
    return out


def evaluate_matrix(A: GroupRingMatrix, act) -> np.ndarray:
    """Entrywise :func:`evaluate`, assembled in N x N blocks."""
    perms, inverses, N = act.perm_arrays(), act.inverse_arrays(), act.N
    coeffs = [c for row in A.entries for x in row for c in x.terms.values()]
    out = np.zeros((A.rows * N, A.cols * N), dtype=_dtype_for(coeffs))
    if out.dtype == object:
        out[:] = Fraction(0)
    for i, row in enumerate(A.entries):
        for j, x in enumerate(row):
            if x:
                _evaluate_into(out, x, perms, inverses, i * N, j * N, N)
    return out
