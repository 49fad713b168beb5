"""Ideal simplex shapes, cross-ratios, and combinatorial flattenings.

An ideal simplex with ordered vertices carries the cross-ratio z on its
01 and 23 edges, z' = 1/(1-z) on the 12 and 03 edges, and z'' = 1 - 1/z on
the 02 and 13 edges.  A flattening refines the shape by a choice of log
branches: the map

    flatten(z; p, q) = (log z + p*pi*i, -log(1-z) + q*pi*i,
                        log(1-z) - log z - (p+q)*pi*i)

is a bijection onto zero-sum log-parameter triples, inverted by
``unflatten``.

Five-point configurations: five points on the sphere at infinity span five
ideal simplices whose shapes are ``five_point_shapes``; the ten signed
three-term log-parameter sums over the connecting edges are computed by
``five_point_edge_conditions``, and their integer coefficient matrix by
``five_point_edge_rows``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DegenerateGeometryError, DomainError, NonIntegralError
from .params import ExtendedParam, Flattening
from .polylog import principal_log

#: unordered vertex pair -> log-parameter slot (w0, w1 or w2)
EDGE_SLOT = {
    (0, 1): 0, (2, 3): 0,
    (1, 2): 1, (0, 3): 1,
    (0, 2): 2, (1, 3): 2,
}

#: slot index 0..5 -> vertex pair, opposite edges three apart
EDGE_OF_SLOT6 = [(0, 1), (1, 2), (0, 2), (2, 3), (0, 3), (1, 3)]


def edge_pair(a: int, b: int) -> tuple[int, int]:
    if a == b or not {a, b} <= {0, 1, 2, 3}:
        raise ValueError(f"invalid vertex pair ({a}, {b})")
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class IdealSimplexShape:
    """Cross-ratio parameter z of an ideal simplex with its even-permutation
    companions z' = 1/(1-z) and z'' = 1 - 1/z; z z' z'' = -1."""

    z: complex

    def __post_init__(self) -> None:
        z = complex(self.z)
        object.__setattr__(self, "z", z)
        if z == 0 or z == 1:
            raise DomainError("shape must avoid 0 and 1")

    @property
    def z_prime(self) -> complex:
        return 1.0 / (1.0 - self.z)

    @property
    def z_double_prime(self) -> complex:
        return 1.0 - 1.0 / self.z

    def parameter(self, slot: int) -> complex:
        return (self.z, self.z_prime, self.z_double_prime)[slot]


def edge_parameter(shape: IdealSimplexShape, edge: tuple[int, int]) -> complex:
    """Cross-ratio parameter attached to an edge (01/23 -> z, 12/03 -> z',
    02/13 -> z'')."""
    return shape.parameter(EDGE_SLOT[edge_pair(*edge)])


INF = complex("inf")


def _is_inf(v) -> bool:
    try:
        return cmath.isinf(complex(v))
    except (TypeError, OverflowError):
        return False


def cross_ratio(z1, z2, z3, z4) -> complex:
    """[z1 : z2 : z3 : z4] = (z3-z2)(z4-z1) / ((z3-z1)(z4-z2)).

    Points live on the Riemann sphere; at most one may be the point at
    infinity, which is handled by cancelling its two factors.
    """
    pts = [z1, z2, z3, z4]
    inf_at = [i for i, v in enumerate(pts) if _is_inf(v)]
    finite = [complex(v) for v in pts if not _is_inf(v)]
    if len(inf_at) > 1:
        raise DegenerateGeometryError("cross-ratio needs pairwise distinct points")
    for i in range(len(finite)):
        for j in range(i + 1, len(finite)):
            if finite[i] == finite[j]:
                raise DegenerateGeometryError(
                    "cross-ratio needs pairwise distinct points"
                )
    if not inf_at:
        a, b, c, d = (complex(v) for v in pts)
        value = ((c - b) * (d - a)) / ((c - a) * (d - b))
    else:
        a, b, c = finite
        which = inf_at[0]
        if which == 0:      # (z4-z1)/(z3-z1) -> 1, leaves (z3-z2)/(z4-z2)
            value = (b - a) / (c - a)
        elif which == 1:    # (z3-z2)/(z4-z2) -> 1, leaves (z4-z1)/(z3-z1)
            value = (c - a) / (b - a)
        elif which == 2:    # (z3-z2)/(z3-z1) -> 1, leaves (z4-z1)/(z4-z2)
            value = (c - a) / (c - b)
        else:               # (z4-z1)/(z4-z2) -> 1, leaves (z3-z2)/(z3-z1)
            value = (c - b) / (c - a)
    if value == 0 or value == 1 or _is_inf(value):
        raise DegenerateGeometryError("degenerate cross-ratio value %r" % value)
    return value


def flatten(param: ExtendedParam) -> Flattening:
    """Log-parameter triple of (z; p, q); the zero-sum is exact because the
    third component is derived."""
    z = param.numeric_z()
    w0 = principal_log(z) + 1j * math.pi * param.p
    w1 = -principal_log(1 - z) + 1j * math.pi * param.q
    return Flattening.from_components(w0, w1)


def unflatten(w: Flattening, tol: float = 1e-9) -> ExtendedParam:
    """Recover (z; p, q) from a flattening using z = +-e^{w0} and
    1 - z = +-e^{-w1}; non-integer branch residuals are rejected."""
    ez = cmath.exp(w.w0)
    em = cmath.exp(-w.w1)
    scale = max(1.0, abs(ez), abs(em))
    best = None
    for sz in (1.0, -1.0):
        for sm in (1.0, -1.0):
            z = sz * ez
            one_minus = sm * em
            err = abs(z + one_minus - 1.0)
            if best is None or err < best[0]:
                best = (err, z)
    err, z = best
    if err > tol * scale:
        raise NonIntegralError("flattening does not exponentiate to a shape")
    if abs(z.imag) <= 1e-14 * max(1.0, abs(z)):
        z = complex(z.real, 0.0)  # roundoff from exp(log z)
    if z == 0 or z == 1:
        raise DomainError("flattening exponentiates to a degenerate shape")
    p_float = (w.w0 - principal_log(z)) / (1j * math.pi)
    q_float = (w.w1 + principal_log(1 - z)) / (1j * math.pi)
    p, q = round(p_float.real), round(q_float.real)
    if abs(p_float - p) > tol or abs(q_float - q) > tol:
        raise NonIntegralError(
            "branch residuals (%r, %r) are not integers" % (p_float, q_float)
        )
    cut_side = None
    if z.imag == 0.0 and (z.real < 0 or z.real > 1):
        cut_side = +1
    return ExtendedParam(z, p, q, cut_side)


def five_point_shapes(x: complex, y: complex) -> tuple[complex, ...]:
    """Cross-ratios (x0..x4) of the five simplices spanned by five points,
    expressed through x = x0 and y = x1."""
    x, y = complex(x), complex(y)
    if x == y:
        raise DegenerateGeometryError("five-point configuration needs x != y")
    shapes = (
        x,
        y,
        y / x,
        y * (1 - x) / (x * (1 - y)),
        (1 - x) / (1 - y),
    )
    for s in shapes:
        if s == 0 or s == 1 or not cmath.isfinite(s):
            raise DegenerateGeometryError("five-point shape hits {0, 1, inf}")
    return shapes


def in_ft_plus(x: complex, y: complex, margin: float = 0.0) -> bool:
    """True when y is in the upper half plane and x lies strictly inside the
    triangle with vertices 0, 1, y (so all five shapes are in the upper
    half plane)."""
    if y.imag <= 0:
        return False
    c = x.imag / y.imag
    b = x.real - c * y.real
    a = 1.0 - b - c
    return min(a, b, c) > margin


def _positions(a: int, b: int, omitted: int) -> tuple[int, int]:
    verts = [v for v in range(5) if v != omitted]
    return verts.index(a), verts.index(b)


def five_point_edge_conditions(
    flats: tuple[Flattening, ...],
    signs: tuple[int, ...] = (1, -1, 1, -1, 1),
) -> dict[tuple[int, int], complex]:
    """Signed three-term log-parameter sum over each of the ten edges of a
    five-point configuration; all ten vanish exactly when the flattenings
    satisfy the flattening condition."""
    if len(flats) != 5 or len(signs) != 5:
        raise ValueError("need five flattenings and five signs")
    out: dict[tuple[int, int], complex] = {}
    for a in range(5):
        for b in range(a + 1, 5):
            total = 0j
            for i in range(5):
                if i in (a, b):
                    continue
                slot = EDGE_SLOT[edge_pair(*_positions(a, b, i))]
                total += signs[i] * flats[i].component(slot)
            out[(a, b)] = total
    return out


def five_point_edge_rows() -> dict[tuple[int, int], list[int]]:
    """Integer coefficient rows of the ten edge conditions in the unknowns
    (p0..p4, q0..q4): slot w0 contributes p_i, slot w1 contributes q_i and
    slot w2 contributes -(p_i + q_i), with alternating signs."""
    rows: dict[tuple[int, int], list[int]] = {}
    for a in range(5):
        for b in range(a + 1, 5):
            vec = [0] * 10
            for i in range(5):
                if i in (a, b):
                    continue
                slot = EDGE_SLOT[edge_pair(*_positions(a, b, i))]
                sign = (-1) ** i
                if slot == 0:
                    vec[i] += sign
                elif slot == 1:
                    vec[5 + i] += sign
                else:
                    vec[i] -= sign
                    vec[5 + i] -= sign
            rows[(a, b)] = vec
    return rows


def lift_index_basis() -> list[list[int]]:
    """Basis of the five-parameter index family: rows are the (p0..p4,
    q0..q4) vectors obtained from unit choices of the free indices
    (p0, p1, q0, q1, q2) with the dependent ones filled in."""
    basis = []
    for free in range(5):
        p0, p1, q0, q1, q2 = (1 if i == free else 0 for i in range(5))
        basis.append(derived_indices(p0, p1, q0, q1, q2))
    return basis


def derived_indices(p0: int, p1: int, q0: int, q1: int, q2: int) -> list[int]:
    """Full index vector (p0..p4, q0..q4) from the five free indices."""
    p2 = p1 - p0
    p3 = p1 - p0 + q1 - q0
    q3 = q2 - q1
    p4 = q1 - q0
    q4 = q2 - q1 - p0
    return [p0, p1, p2, p3, p4, q0, q1, q2, q3, q4]


def in_lift_index_family(vec: list[int]) -> bool:
    """Membership test for the index lattice of ``lift_index_basis``."""
    p0, p1, p2, p3, p4, q0, q1, q2, q3, q4 = vec
    return vec == derived_indices(p0, p1, q0, q1, q2)
