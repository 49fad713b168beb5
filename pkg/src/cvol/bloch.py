"""Formal elements of the extended pre-Bloch group and its computable maps.

Elements are integer combinations of generators [z, p, q] in one of two
flavours: mode "ep" allows all integer branch indices (values of the Rogers
lift live in C/pi^2*Z), mode "eep" restricts to even indices (values in
C/2*pi^2*Z).  Equality of elements is never decided directly; identities are
verified through the separating computable homomorphisms:

* ``r_of_element``   -- the lifted Rogers sum, reduced by the mode's modulus;
* ``nu_symbolic``    -- the wedge log z ^ (-log(1-z)) image, evaluated
                        exactly over a finite symbol basis;
* ``epsilon_parity`` -- the (p*q mod 2) homomorphism that detects the
                        order-two element kappa.

``five_term_instance`` produces the alternating five-term combination for a
base point with y in the upper half plane and x inside the triangle 0,1,y
(where all five shapes are in the upper half plane), shifted by the
five-parameter integer index family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .errors import DegenerateGeometryError, DomainError, SymbolMatchError
from .geometry import derived_indices, five_point_shapes, in_ft_plus
from .params import ExtendedParam
from .polylog import (
    PI_SQUARED,
    TWO_PI_SQUARED,
    ModPiSquared,
    lifted_rogers_raw,
    principal_log,
    reduce_mod,
)
from .wedge import SymbolVector, WedgeExpr, combine, sym, wedge

MODES = ("ep", "eep")


def _check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError("mode must be 'ep' or 'eep'")
    return mode


class EBElement:
    """Finite integer combination of ExtendedParam generators."""

    __slots__ = ("terms", "mode")

    def __init__(
        self,
        terms: Mapping[ExtendedParam, int] | None = None,
        mode: str = "ep",
    ):
        self.mode = _check_mode(mode)
        clean: dict[ExtendedParam, int] = {}
        for param, coeff in (terms or {}).items():
            if coeff == 0:
                continue
            if mode == "eep" and (param.p % 2 or param.q % 2):
                raise DomainError("eep elements need even branch indices")
            clean[param] = clean.get(param, 0) + int(coeff)
        self.terms = {k: v for k, v in clean.items() if v != 0}

    def is_zero(self) -> bool:
        return not self.terms

    def _binop(self, other: "EBElement", s: int) -> "EBElement":
        if self.mode != other.mode:
            raise ValueError("cannot combine elements of different modes")
        out = dict(self.terms)
        for param, coeff in other.terms.items():
            out[param] = out.get(param, 0) + s * coeff
        return EBElement(out, self.mode)

    def __add__(self, other: "EBElement") -> "EBElement":
        return self._binop(other, +1)

    def __sub__(self, other: "EBElement") -> "EBElement":
        return self._binop(other, -1)

    def __neg__(self) -> "EBElement":
        return (-1) * self

    def __rmul__(self, n: int) -> "EBElement":
        return EBElement({k: n * c for k, c in self.terms.items()}, self.mode)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, EBElement)
            and self.mode == other.mode
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.mode, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return f"EBElement(0, mode={self.mode!r})"
        parts = [f"{c}*[{p.z!r},{p.p},{p.q}]" for p, c in self.terms.items()]
        return "EBElement(" + " + ".join(parts) + f", mode={self.mode!r})"


def generator(
    z: complex, p: int, q: int, mode: str = "ep", cut_side: int | None = None
) -> EBElement:
    """Single-generator element [z, p, q]."""
    return EBElement({ExtendedParam(z, p, q, cut_side): 1}, mode)


@dataclass(frozen=True)
class FiveTermTuple:
    """Base point (x, y) with y upper-half-plane and x inside triangle(0,1,y),
    plus the five free integer offsets of the index family."""

    x: complex
    y: complex
    p0: int = 0
    p1: int = 0
    q0: int = 0
    q1: int = 0
    q2: int = 0

    def __post_init__(self) -> None:
        if not in_ft_plus(complex(self.x), complex(self.y)):
            raise DegenerateGeometryError(
                "base point must have y upper-half-plane and x inside "
                "the triangle with vertices 0, 1, y"
            )

    def indices(self) -> list[tuple[int, int]]:
        """The five (p_i, q_i) pairs determined by the free offsets."""
        v = derived_indices(self.p0, self.p1, self.q0, self.q1, self.q2)
        return list(zip(v[:5], v[5:]))

    def shapes(self) -> tuple[complex, ...]:
        return five_point_shapes(complex(self.x), complex(self.y))


def five_term_instance(t: FiveTermTuple) -> EBElement:
    """Alternating five-term combination sum_i (-1)^i [x_i, p_i, q_i]."""
    shapes = t.shapes()
    terms: dict[ExtendedParam, int] = {}
    for i, (shape, (p, q)) in enumerate(zip(shapes, t.indices())):
        terms[ExtendedParam(shape, p, q)] = (-1) ** i
    return EBElement(terms, "ep")


def transfer_instance(z: complex, p: int, q: int, p2: int, q2: int) -> EBElement:
    """[z,p,q] + [z,p2,q2] - [z,p,q2] - [z,p2,q]."""
    return (
        generator(z, p, q)
        + generator(z, p2, q2)
        - generator(z, p, q2)
        - generator(z, p2, q)
    )


def chi(z: complex, cut_side: int | None = None) -> EBElement:
    """chi(z) = [z,0,1] - [z,0,0]; its Rogers value is (pi*i/2) log z."""
    return generator(z, 0, 1, cut_side=cut_side) - generator(
        z, 0, 0, cut_side=cut_side
    )


def chi_hat(z: complex, cut_side: int | None = None) -> EBElement:
    """chi_hat(z) = [z,0,2] - [z,0,0] in eep mode; Rogers value pi*i log z."""
    return generator(z, 0, 2, mode="eep", cut_side=cut_side) - generator(
        z, 0, 0, mode="eep", cut_side=cut_side
    )


def kappa_element(z: complex) -> EBElement:
    """kappa = [z,1,1] + [z,0,0] - [z,1,0] - [z,0,1], independent of z."""
    return (
        generator(z, 1, 1)
        + generator(z, 0, 0)
        - generator(z, 1, 0)
        - generator(z, 0, 1)
    )


def super_transfer_rhs(z: complex, p: int, q: int) -> EBElement:
    """pq[z,1,1] - (pq-p)[z,1,0] - (pq-q)[z,0,1] + (pq-p-q+1)[z,0,0]."""
    return EBElement(
        {
            ExtendedParam(z, 1, 1): p * q,
            ExtendedParam(z, 1, 0): -(p * q - p),
            ExtendedParam(z, 0, 1): -(p * q - q),
            ExtendedParam(z, 0, 0): p * q - p - q + 1,
        },
        "ep",
    )


def r_of_element(e: EBElement) -> ModPiSquared:
    """Lifted-Rogers sum of the element, reduced by the mode's modulus."""
    total = 0j
    for param, coeff in e.terms.items():
        total += coeff * lifted_rogers_raw(param.numeric_z(), param.p, param.q)
    modulus = PI_SQUARED if e.mode == "ep" else TWO_PI_SQUARED
    return reduce_mod(total, modulus)


def epsilon_parity(e: EBElement) -> int:
    """sum coeff * p * q modulo 2."""
    return sum(c * param.p * param.q for param, c in e.terms.items()) % 2


# ---------------------------------------------------------------------------
# Symbolic evaluation of nu
# ---------------------------------------------------------------------------

#: symbol names over which five-term-family logarithms decompose
LOG_SYMBOLS = ("log_x", "log_1mx", "log_y", "log_1my", "log_xmy")
PI_I_SYMBOL = "pi_i"


def _log_candidates(
    x: complex, y: complex | None
) -> tuple[list[tuple[complex, SymbolVector]], dict[str, complex]]:
    """Values expressible as monomials in x, 1-x, y, 1-y, x-y, with their
    exact exponent vectors and the numeric values of the base logarithms."""
    numeric = {"log_x": principal_log(x), "log_1mx": principal_log(1 - x)}
    cands: list[tuple[complex, SymbolVector]] = [
        (x, sym("log_x")),
        (1 - x, sym("log_1mx")),
    ]
    if y is not None:
        numeric["log_y"] = principal_log(y)
        numeric["log_1my"] = principal_log(1 - y)
        numeric["log_xmy"] = principal_log(x - y)
        lx, l1mx = sym("log_x"), sym("log_1mx")
        ly, l1my, lxmy = sym("log_y"), sym("log_1my"), sym("log_xmy")
        cands += [
            (y, ly),
            (1 - y, l1my),
            (y / x, ly - lx),
            ((x - y) / x, lxmy - lx),
            (y * (1 - x) / (x * (1 - y)), ly + l1mx - lx - l1my),
            ((x - y) / (x * (1 - y)), lxmy - lx - l1my),
            ((1 - x) / (1 - y), l1mx - l1my),
            ((x - y) / (1 - y), lxmy - l1my),
        ]
    return cands, numeric


def _decompose_log(
    value: complex,
    cands: list[tuple[complex, SymbolVector]],
    numeric: dict[str, complex],
    match_tol: float,
    round_tol: float,
) -> SymbolVector:
    """Express log(value) as an exact symbol vector plus a pi_i correction
    resolved by rounding."""
    for cand_value, vec in cands:
        if abs(value - cand_value) <= match_tol * max(1.0, abs(cand_value)):
            symbolic = sum(
                (c * numeric[s] for s, c in vec.coeffs.items()), start=0j
            )
            c_float = (principal_log(value) - symbolic) / (1j * math.pi)
            c = round(c_float.real)
            if abs(c_float - c) > round_tol:
                raise SymbolMatchError(
                    "branch correction %r is not an integer" % (c_float,)
                )
            return vec + sym(PI_I_SYMBOL, c)
    raise SymbolMatchError(
        "value %r is not a known monomial in the base point" % (value,)
    )


def nu_symbolic(
    e: EBElement,
    base_point: complex | tuple[complex, complex | None],
    match_tol: float = 1e-9,
    round_tol: float = 1e-6,
) -> WedgeExpr:
    """Exact wedge image sum coeff * (log z + p pi i) ^ (-log(1-z) + q pi i).

    Every generator's z and 1-z must be, up to branch, a monomial in
    x, 1-x, y, 1-y, x-y for the supplied base point; the integer branch
    corrections are resolved numerically and enter the pi_i coefficient.
    """
    if isinstance(base_point, tuple):
        x, y = base_point
    else:
        x, y = base_point, None
    cands, numeric = _log_candidates(complex(x), None if y is None else complex(y))
    pieces: list[tuple[int, WedgeExpr]] = []
    for param, coeff in e.terms.items():
        z = param.numeric_z()
        left = _decompose_log(z, cands, numeric, match_tol, round_tol) + sym(
            PI_I_SYMBOL, param.p
        )
        right = -_decompose_log(1 - z, cands, numeric, match_tol, round_tol) + sym(
            PI_I_SYMBOL, param.q
        )
        pieces.append((coeff, wedge(left, right)))
    return combine(pieces)

