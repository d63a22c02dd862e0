"""Equivariant fixtures: the integers acting on a subdivided line, and Z^2
acting on the triangulated plane with a 3x3 fundamental domain."""

from __future__ import annotations

import numpy as np

from hdx.covers import CosetAction, GammaComplexData
from hdx.errors import InvalidParameter


def cycle_datum() -> GammaComplexData:
    """Triangle boundary a, b, c with the edge c -> t.a closing up the line."""
    e, t = (), (1,)
    cells = (
        (((e, 0),), ((e, 1),), ((e, 2),)),
        (((e, 0), (e, 1)), ((e, 1), (e, 2)), ((e, 2), (t, 0))),
    )
    return GammaComplexData(1, cells)


def cyclic_action(m: int) -> CosetAction:
    if m < 1:
        raise InvalidParameter(f"m must be >= 1, got {m}")
    return CosetAction(m, (tuple((x + 1) % m for x in range(m)),), 0, f"Z/{m}")


def fixture_cycle_z(m: int) -> tuple[GammaComplexData, CosetAction]:
    """Quotient is the cycle on 3m vertices."""
    return cycle_datum(), cyclic_action(m)


def _torus_point(x: int, y: int) -> tuple[tuple[int, ...], int]:
    word = (1,) * (x // 3) + (2,) * (y // 3)
    return word, 3 * (x % 3) + (y % 3)


def torus_datum() -> GammaComplexData:
    """9-vertex triangulated torus; generator 1 shifts x by 3, generator 2 shifts y by 3."""
    P = _torus_point
    grid = [(p, q) for p in range(3) for q in range(3)]
    vertices = tuple(((((), 3 * p + q),)) for p, q in grid)
    edges = []
    triangles = []
    for p, q in grid:
        edges.append((P(p, q), P(p + 1, q)))
        edges.append((P(p, q), P(p, q + 1)))
        edges.append((P(p, q), P(p + 1, q + 1)))
        triangles.append((P(p, q), P(p + 1, q), P(p + 1, q + 1)))
        triangles.append((P(p, q), P(p, q + 1), P(p + 1, q + 1)))
    return GammaComplexData(2, (vertices, tuple(edges), tuple(triangles)))


def torus_action(m1: int, m2: int) -> CosetAction:
    if m1 < 1 or m2 < 1:
        raise InvalidParameter(f"m1, m2 must be >= 1, got {(m1, m2)}")
    N = m1 * m2
    t1 = tuple(((x // m2 + 1) % m1) * m2 + x % m2 for x in range(N))
    t2 = tuple((x // m2) * m2 + (x % m2 + 1) % m2 for x in range(N))
    return CosetAction(N, (t1, t2), 0, f"Z/{m1} x Z/{m2}")


def fixture_torus_z2(m1: int, m2: int) -> tuple[GammaComplexData, CosetAction]:
    """Quotient is the triangulated (3 m1 x 3 m2)-torus."""
    return torus_datum(), torus_action(m1, m2)


def random_action(generators: int, N: int, rng: np.random.Generator, label: str = "") -> CosetAction:
    """Independent uniformly random permutations; a valid action of a free group."""
    return CosetAction(N, tuple(tuple(int(x) for x in rng.permutation(N)) for _ in range(generators)), 0, label)
