"""Hodge Laplacians, Hodge decomposition, spectra and gaps of a finite cochain complex.

All adjoints are taken with respect to the inner product in which the
standard cochain basis is orthonormal, so the adjoint of ``d`` is ``d.T``.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

from hdx.errors import (
    DegreeOutOfRange,
    DimensionMismatch,
    NegativeSpectrum,
    NotSymmetric,
    ToleranceInconsistency,
    ZeroVector,
)
from hdx.exact import exact_rank
from hdx.simplicial import SimplicialComplex, coboundary_matrix

TAU_NUM = 1e-9
TAU_EIG = 1e-10
TAU_SYM = 1e-12
ZERO_TOL_REL = 1e-9


def default_zero_tol(eigenvalues: Sequence[float]) -> float:
    """``1e-9 * max(1, lambda_max)``, or the HDX_ZERO_TOL override if set."""
    env = os.environ.get("HDX_ZERO_TOL")
    if env:
        return float(env)
    lam_max = max((float(x) for x in eigenvalues), default=0.0)
    return ZERO_TOL_REL * max(1.0, lam_max)


def _is_exact(a: np.ndarray) -> bool:
    return a.dtype.kind in "iu" or a.dtype == object


class CochainComplex:
    """Cochain spaces C^0..C^top with coboundaries ``d[l]: C^l -> C^{l+1}``.

    ``d[top]`` is the empty ``(0, dims[top])`` matrix, which truncates the
    complex. Integer matrices are kept as integers so Laplacians and ranks
    stay exact.
    """

    def __init__(self, d: Sequence[np.ndarray]):
        d = [np.asarray(m) for m in d]
        if not d:
            raise DimensionMismatch("need at least one degree")
        dims = [m.shape[1] for m in d]
        for l in range(len(d) - 1):
            if d[l].shape[0] != dims[l + 1]:
                raise DimensionMismatch(
                    f"d[{l}] has {d[l].shape[0]} rows, C^{l + 1} has dimension {dims[l + 1]}"
                )
        if d[-1].shape[0] != 0:
            d.append(np.zeros((0, d[-1].shape[0]), dtype=d[-1].dtype))
            dims.append(d[-1].shape[1])
        self.d = d
        self.dims = dims
        self._ranks: dict[int, int] = {}

    @classmethod
    def from_simplicial(cls, K: SimplicialComplex, top: int | None = None) -> "CochainComplex":
        top = K.dim if top is None else min(top, K.dim)
        d = [coboundary_matrix(K, l) for l in range(top)]
        d.append(np.zeros((0, K.count(top)), dtype=np.int64))
        return cls(d)

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    @property
    def exact(self) -> bool:
        return all(_is_exact(m) for m in self.d)

    def coboundary(self, l: int) -> np.ndarray:
        """``d_l``, with ``d_{-1}`` the empty map into C^0."""
        if l == -1:
            return np.zeros((self.dims[0], 0), dtype=self.d[0].dtype)
        if not 0 <= l <= self.top:
            raise DegreeOutOfRange(f"no coboundary in degree {l}")
        return self.d[l]

    def check_degree(self, l: int):
        if not 0 <= l <= self.top:
            raise DegreeOutOfRange(f"degree {l} outside [0, {self.top}]")

    def rank(self, l: int) -> int:
        """Rank of ``d_l``: exact rational rank for integer data, SVD rank otherwise."""
        if l not in self._ranks:
            m = self.coboundary(l)
            if 0 in m.shape:
                r = 0
            elif _is_exact(m):
                r = exact_rank(m)
            else:
                r = int(np.linalg.matrix_rank(m.astype(float)))
            self._ranks[l] = r
        return self._ranks[l]

    def chain_defect(self) -> float:
        """Largest entry of ``d[l+1] d[l]`` over all degrees."""
        worst = 0.0
        for l in range(self.top):
            prod = self.d[l + 1] @ self.d[l]
            if prod.size:
                worst = max(worst, float(np.max(np.abs(prod))))
        return worst


def upper_laplacian(M: CochainComplex, l: int) -> np.ndarray:
    M.check_degree(l)
    d = M.coboundary(l)
    return d.T @ d


def lower_laplacian(M: CochainComplex, l: int) -> np.ndarray:
    M.check_degree(l)
    d = M.coboundary(l - 1)
    return d @ d.T


def full_laplacian(M: CochainComplex, l: int) -> np.ndarray:
    return upper_laplacian(M, l) + lower_laplacian(M, l)


def spectrum(S: np.ndarray) -> np.ndarray:
    """All eigenvalues of a real symmetric matrix, ascending, with multiplicity."""
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise NotSymmetric(f"not a square matrix: shape {S.shape}")
    if S.size == 0:
        return np.zeros(0)
    scale = max(1.0, float(np.max(np.abs(S))))
    if np.max(np.abs(S - S.T)) > TAU_SYM * scale:
        raise NotSymmetric("matrix is not symmetric within tolerance")
    return np.linalg.eigvalsh(S)


def essential_gap(eigenvalues: Sequence[float], zero_tol: float | None = None) -> float | None:
    """Smallest eigenvalue above ``zero_tol``; ``None`` if every eigenvalue is zero."""
    ev = np.asarray(eigenvalues, dtype=float)
    if zero_tol is None:
        zero_tol = default_zero_tol(ev)
    if ev.size and ev.min() < -zero_tol:
        raise NegativeSpectrum(f"eigenvalue {ev.min()} below -{zero_tol}")
    above = ev[ev > zero_tol]
    return float(above.min()) if above.size else None


def sigma_union(spectra: Iterable[Sequence[float]]) -> np.ndarray:
    """Multiset union of sorted spectra (spectrum of the direct sum)."""
    return np.fromiter(heapq.merge(*[np.asarray(s, dtype=float).tolist() for s in spectra]), dtype=float)


def rayleigh_quotient(S: np.ndarray, v: np.ndarray) -> float:
    v = np.asarray(v, dtype=float)
    nv = float(v @ v)
    if nv == 0.0:
        raise ZeroVector("Rayleigh quotient of the zero vector")
    return float(v @ (np.asarray(S, dtype=float) @ v)) / nv


def _orthonormal_image(A: np.ndarray, rank: int) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal bases of im A and of its orthogonal complement.

    ``rank`` is the exact rank; it decides how many singular directions
    span the image.
    """
    n = A.shape[0]
    if A.shape[1] == 0 or rank == 0:
        return np.zeros((n, 0)), np.eye(n)
    U, _, _ = np.linalg.svd(A.astype(float), full_matrices=True)
    return U[:, :rank], U[:, rank:]


@dataclass(frozen=True)
class UpperGap:
    restricted_min: float | None
    first_nonzero: float | None


def spectral_gap_upper(M: CochainComplex, l: int, zero_tol: float | None = None) -> UpperGap:
    """Both gap notions for the upper Laplacian in degree ``l``.

    ``restricted_min`` is the least eigenvalue of the upper Laplacian
    compressed to the orthogonal complement of ``im d_{l-1}``;
    ``first_nonzero`` is its smallest eigenvalue above ``zero_tol``.
    The two agree exactly when the degree-l cohomology vanishes.
    """
    up = upper_laplacian(M, l)
    ev = spectrum(up)
    if zero_tol is None:
        zero_tol = default_zero_tol(ev)
    _, Q = _orthonormal_image(M.coboundary(l - 1), M.rank(l - 1))
    if Q.shape[1]:
        restricted = float(spectrum(Q.T @ up.astype(float) @ Q)[0])
    else:
        restricted = None
    return UpperGap(restricted, essential_gap(ev, zero_tol))


def betti_exact(M: CochainComplex, l: int) -> int:
    """dim ker d_l - rank d_{l-1}."""
    M.check_degree(l)
    return M.dims[l] - M.rank(l) - M.rank(l - 1)


def hodge_decompose(M: CochainComplex, l: int, c: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split ``c`` into (harmonic, exact, coexact) parts."""
    M.check_degree(l)
    c = np.asarray(c, dtype=float)
    if c.shape != (M.dims[l],):
        raise DimensionMismatch(f"cochain of length {c.shape} in degree {l} of dimension {M.dims[l]}")
    U_ex, _ = _orthonormal_image(M.coboundary(l - 1), M.rank(l - 1))
    U_co, _ = _orthonormal_image(M.coboundary(l).T, M.rank(l))
    exact = U_ex @ (U_ex.T @ c)
    coexact = U_co @ (U_co.T @ c)
    harmonic = c - exact - coexact
    return harmonic, exact, coexact


def reduced_check(M: CochainComplex, l: int, rank: int | None = None,
                  zero_tol: float | None = None) -> tuple[bool, float | None]:
    """Is the upper Laplacian invertible on the closure of im d_l^T?

    In finite dimensions this always holds; ``False`` means the numerical
    eigenvalues disagree with the supplied (exact) rank. An empty
    restriction is vacuously invertible and returns ``(True, None)``.
    """
    up = upper_laplacian(M, l).astype(float)
    if rank is None:
        rank = M.rank(l)
    U, _ = _orthonormal_image(M.coboundary(l).T, rank)
    if U.shape[1] == 0:
        return True, None
    ev = spectrum(U.T @ up @ U)
    if zero_tol is None:
        zero_tol = default_zero_tol(spectrum(up))
    lam = float(ev[0])
    return lam > zero_tol, lam


@dataclass(frozen=True)
class SpectrumReport:
    degree: int
    eigenvalues: tuple[float, ...]
    zero_tol: float
    betti_exact: int
    gap_restricted: float | None
    first_nonzero_upper: float | None
    first_nonzero_lower: float | None
    essential_gap: float | None

    def to_dict(self) -> dict:
        out = asdict(self)
        out["eigenvalues"] = list(self.eigenvalues)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "SpectrumReport":
        data = dict(data)
        data["eigenvalues"] = tuple(data["eigenvalues"])
        return cls(**data)


def spectrum_report(M: CochainComplex, l: int, zero_tol: float | None = None) -> SpectrumReport:
    """Full-Laplacian spectrum in degree ``l`` with Betti number and gaps.

    The floating kernel count is cross-checked against the exact Betti
    number; a disagreement raises ToleranceInconsistency.
    """
    full = full_laplacian(M, l)
    ev = spectrum(full)
    if zero_tol is None:
        zero_tol = default_zero_tol(ev)
    betti = betti_exact(M, l)
    if M.exact:
        kernel = int(np.sum(ev <= zero_tol))
        if kernel != betti:
            raise ToleranceInconsistency(
                f"degree {l}: {kernel} eigenvalues below {zero_tol}, exact Betti number {betti}"
            )
    up_ev = spectrum(upper_laplacian(M, l))
    low_ev = spectrum(lower_laplacian(M, l))
    gap = spectral_gap_upper(M, l)
    return SpectrumReport(
        degree=l,
        eigenvalues=tuple(float(x) for x in ev),
        zero_tol=zero_tol,
        betti_exact=betti,
        gap_restricted=gap.restricted_min,
        first_nonzero_upper=essential_gap(up_ev, default_zero_tol(up_ev)),
        first_nonzero_lower=essential_gap(low_ev, default_zero_tol(low_ev)),
        essential_gap=essential_gap(ev, zero_tol),
    )


def nonzero_part(eigenvalues: Sequence[float], zero_tol: float | None = None) -> np.ndarray:
    ev = np.asarray(eigenvalues, dtype=float)
    if zero_tol is None:
        zero_tol = default_zero_tol(ev)
    return np.sort(ev[ev > zero_tol])
