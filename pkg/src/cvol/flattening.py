"""Integer chain complex of a triangulation and the flattening solver.

To each tetrahedron belongs a rank-2 lattice J_Delta spanned by its edges
e_0..e_5 (slot i carrying log-parameter w_{i mod 3}) with relations
e_i = e_{i+3} and e_0 + e_1 + e_2 = 0, and the skew form <e_0, e_1> = 1.
With C_0 and C_1 the free modules on vertex and edge classes, the sequence

    J-complex:  0 -> C_0 --alpha--> C_1 --beta--> J --beta*--> C_1
                  --alpha*--> C_0 -> 0

is a chain complex (spots indexed 5..1).  ``omega`` is the element of
J (x) C whose Delta-component is -(log(1-z) e_0 + log(z) e_1); at a solution
of the gluing equations (1/pi i) beta*(omega) is an even integer vector.

``solve_flattenings`` finds integer branch indices (p_i, q_i) such that
every edge class has zero signed log-parameter sum and every supplied cusp
path has zero log-parameter and zero parity, by solving one combined
integer linear system in Hermite normal form.  The resulting fundamental
element sum_i eps_i [z_i, p_i, q_i] evaluates under the lifted Rogers sum
to i(vol + i cs) modulo pi^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bloch import EBElement, nu_symbolic, r_of_element
from .errors import InconsistentSystemError, NonIntegralError
from .geometry import EDGE_OF_SLOT6, EDGE_SLOT, flatten
from .intlinalg import (
    AbelianGroup,
    IntegerSolution,
    gf2_rank,
    matmul,
    rank,
    reduce_mod_lattice,
    solve_integer_system,
)
from .params import ExtendedParam
from .polylog import PI_SQUARED, principal_log, reduce_mod
from .triangulation import (
    EdgeClass,
    NormalPath,
    Triangulation,
    edge_classes,
    face_classes,
    orientation_signs,
    path_passes,
    vertex_classes,
    vertex_link_cycles,
)

#: slot index 0..5 -> coefficients on the J_Delta basis (e_0, e_1)
SLOT_BASIS = [(1, 0), (0, 1), (-1, -1), (1, 0), (0, 1), (-1, -1)]


@dataclass
class JComplex:
    """Integer matrices of the chain complex C0 -> C1 -> J -> C1 -> C0."""

    tri: Triangulation
    edges: list[EdgeClass]
    vertices: list[list[tuple[int, int]]]
    alpha: list[list[int]]        # (n_edges) x (n_vertices)
    beta: list[list[int]]         # (2T) x (n_edges)
    beta_star: list[list[int]]    # (n_edges) x (2T)
    alpha_star: list[list[int]]   # (n_vertices) x (n_edges)

    @property
    def j_rank(self) -> int:
        return 2 * self.tri.num_tetrahedra


def _edge_class_lookup(edges: list[EdgeClass]) -> dict[tuple[int, tuple[int, int]], int]:
    lookup = {}
    for e in edges:
        for tet, pair, _ in e.incidences:
            lookup[(tet, pair)] = e.index
    return lookup


def _vertex_class_lookup(vertices: list[list[tuple[int, int]]]) -> dict:
    lookup = {}
    for idx, orbit in enumerate(vertices):
        for slot in orbit:
            lookup[slot] = idx
    return lookup


def build_j_complex(tri: Triangulation) -> JComplex:
    """Assemble alpha, beta, beta* and alpha* as exact integer matrices."""
    edges = edge_classes(tri)
    vertices = vertex_classes(tri)
    edge_of = _edge_class_lookup(edges)
    vertex_of = _vertex_class_lookup(vertices)
    ne, nv, nt = len(edges), len(vertices), tri.num_tetrahedra

    def j_of(tet: int, slot: int) -> int:
        return edge_of[(tet, EDGE_OF_SLOT6[slot])]

    # alpha: vertex -> sum of incident edges (loops counted twice);
    # alpha*: edge -> sum of its endpoints.  Both from the same incidences.
    alpha = [[0] * nv for _ in range(ne)]
    for e in edges:
        tet, (a, b), _ = e.incidences[0]
        for endpoint in (a, b):
            alpha[e.index][vertex_of[(tet, endpoint)]] += 1
    alpha_star = [list(col) for col in zip(*alpha)]

    # beta: edge class -> sum of the slots identified with it, per simplex.
    beta = [[0] * ne for _ in range(2 * nt)]
    for tet in range(nt):
        for slot in range(6):
            c0, c1 = SLOT_BASIS[slot]
            col = j_of(tet, slot)
            beta[2 * tet][col] += c0
            beta[2 * tet + 1][col] += c1

    # beta*(e_i) = j(e_{i+1}) - j(e_{i+2}) + j(e_{i+4}) - j(e_{i+5})
    beta_star = [[0] * (2 * nt) for _ in range(ne)]
    for tet in range(nt):
        for basis_idx in (0, 1):
            for offset, sign in ((1, 1), (2, -1), (4, 1), (5, -1)):
                row = j_of(tet, (basis_idx + offset) % 6)
                beta_star[row][2 * tet + basis_idx] += sign
    return JComplex(tri, edges, vertices, alpha, beta, beta_star, alpha_star)


def chain_complex_composites(jc: JComplex) -> tuple[list[list[int]], ...]:
    """The three consecutive composites; all must be zero matrices."""
    return (
        matmul(jc.beta, jc.alpha),
        matmul(jc.beta_star, jc.beta),
        matmul(jc.alpha_star, jc.beta_star),
    )


def omega(tri: Triangulation, shapes: list[complex]) -> list[complex]:
    """Element of J (x) C with Delta-component -(log(1-z) e_0 + log(z) e_1),
    as a coordinate vector over the (e_0, e_1) bases."""
    out: list[complex] = []
    for z in shapes:
        out.append(-principal_log(1 - z))
        out.append(-principal_log(z))
    return out


def xi(flattening: Flattening) -> tuple[complex, complex]:
    """J_Delta (x) C coordinates (w1, -w0) of a flattening."""
    return (flattening.w1, -flattening.w0)


def integral_defect(
    jc: JComplex, omega_vec: list[complex], tol: float = 1e-9
) -> list[int]:
    """c = (1/pi i) beta*(omega): integral exactly when the shapes satisfy
    the gluing equations, and then even at every edge."""
    image = [
        sum(c * w for c, w in zip(row, omega_vec)) for row in jc.beta_star
    ]
    out = []
    for edge, value in zip(jc.edges, image):
        ratio = value / (1j * math.pi)
        nearest = round(ratio.real)
        if abs(ratio - nearest) > tol:
            raise NonIntegralError(
                f"beta*(omega) at edge {edge.index} is {value!r}, not an "
                "integer multiple of pi i; shapes do not satisfy the gluing "
                "equations"
            )
        out.append(nearest)
    return out


def homology_of_j(jc: JComplex) -> dict[int, AbelianGroup]:
    """Homology at the five spots (keys 5..1) via Smith normal form."""
    nv = len(jc.vertices)
    ne = len(jc.edges)
    nj = jc.j_rank
    zero_in: list[list[int]] = []
    spots = {
        5: (nv, jc.alpha, zero_in),
        4: (ne, jc.beta, jc.alpha),
        3: (nj, jc.beta_star, jc.beta),
        2: (ne, jc.alpha_star, jc.beta_star),
        1: (nv, [], jc.alpha_star),
    }
    out = {}
    for spot, (dim, outgoing, incoming) in spots.items():
        nullity = dim - (rank(outgoing) if outgoing else 0)
        out[spot] = AbelianGroup.from_presentation(nullity, incoming)
    return out


def h1_mod2(tri: Triangulation) -> int:
    """dim_{Z/2} H_1(K; Z/2) computed from the simplicial chain complex of
    the glued complex (vertex, edge and face classes)."""
    edges = edge_classes(tri)
    vertices = vertex_classes(tri)
    faces = face_classes(tri)
    edge_of = _edge_class_lookup(edges)
    vertex_of = _vertex_class_lookup(vertices)

    d1 = [[0] * len(edges) for _ in range(len(vertices))]
    for e in edges:
        tet, (a, b), _ = e.incidences[0]
        d1[vertex_of[(tet, a)]][e.index] += 1
        d1[vertex_of[(tet, b)]][e.index] += 1

    d2 = [[0] * len(faces) for _ in range(len(edges))]
    for col, ((tet, f), _other) in enumerate(faces):
        verts = [v for v in range(4) if v != f]
        for i in range(3):
            for j in range(i + 1, 3):
                pair = (verts[i], verts[j])
                d2[edge_of[(tet, pair)]][col] += 1

    rank_d1 = gf2_rank(d1) if vertices else 0
    rank_d2 = gf2_rank(d2) if faces else 0
    return len(edges) - rank_d1 - rank_d2


# ---------------------------------------------------------------------------
# Flattening solver
# ---------------------------------------------------------------------------

#: pi*i coefficient of slot w on (p, q): w0 -> p, w1 -> q, w2 -> -(p+q)
SLOT_PQ_COEFF = {0: (1, 0), 1: (0, 1), 2: (-1, -1)}


def _slot_constant(z: complex, slot: int) -> complex:
    lz, l1mz = principal_log(z), principal_log(1 - z)
    return (lz, -l1mz, l1mz - lz)[slot]


def _slot_parity_const(z: complex, slot: int) -> int:
    # parity parameter of slot w2 is p + q + 1 (the shifted branch of z'')
    return 1 if slot == 2 else 0


@dataclass
class FlatteningAssignment:
    """Solved branch indices with a full residual report.

    ``kernel`` spans the solution-lattice directions that in addition
    annihilate the log-parameter functionals of every vertex-link normal
    path (found by enumerating simple link cycles); shifting the particular
    solution by these keeps all path conditions valid.  ``raw_kernel`` is
    the unpruned kernel of the enforced system.
    """

    params: list[ExtendedParam]
    signs: list[int]
    edge_residuals: list[complex]
    path_residuals: list[complex]
    path_parities: list[int]
    defect: list[int]
    edge_flattened_only: bool
    kernel: list[list[int]] = field(default_factory=list)
    raw_kernel: list[list[int]] = field(default_factory=list)

    def pq(self) -> list[tuple[int, int]]:
        return [(p.p, p.q) for p in self.params]

    def max_residual(self) -> float:
        vals = [abs(r) for r in self.edge_residuals + self.path_residuals]
        return max(vals) if vals else 0.0


def _build_system(
    tri: Triangulation, shapes: list[complex], tol: float
) -> tuple[list[list[int]], list[int], int]:
    """Integer rows for edge conditions, path log conditions and path parity
    conditions (the latter with an auxiliary doubled unknown each)."""
    signs = orientation_signs(tri)
    edges = edge_classes(tri)
    n = tri.num_tetrahedra
    num_aux = len(tri.cusp_paths)
    width = 2 * n + num_aux
    rows: list[list[int]] = []
    rhs: list[int] = []

    def integral_target(value: complex, what: str) -> int:
        ratio = value / (1j * math.pi)
        nearest = round(ratio.real)
        if abs(ratio - nearest) > tol:
            raise NonIntegralError(
                f"{what} constant {value!r} is not an integer multiple of "
                "pi i; shapes do not satisfy the gluing equations"
            )
        return nearest

    for edge in edges:
        row = [0] * width
        const = 0j
        for tet, pair, _orient in edge.incidences:
            slot = EDGE_SLOT[pair]
            cp, cq = SLOT_PQ_COEFF[slot]
            row[2 * tet] += signs[tet] * cp
            row[2 * tet + 1] += signs[tet] * cq
            const += signs[tet] * _slot_constant(shapes[tet], slot)
        rows.append(row)
        rhs.append(-integral_target(const, f"edge {edge.index}"))

    for k, path in enumerate(tri.cusp_paths):
        passes = path_passes(tri, path)
        row = [0] * width
        const = 0j
        parity_row = [0] * width
        parity_const = 0
        for tet, pair, rot in passes:
            slot = EDGE_SLOT[pair]
            cp, cq = SLOT_PQ_COEFF[slot]
            weight = rot * signs[tet]
            row[2 * tet] += weight * cp
            row[2 * tet + 1] += weight * cq
            const += weight * _slot_constant(shapes[tet], slot)
            parity_row[2 * tet] += abs(cp)
            parity_row[2 * tet + 1] += abs(cq)
            parity_const += _slot_parity_const(shapes[tet], slot)
        rows.append(row)
        rhs.append(-integral_target(const, f"cusp path {k}"))
        parity_row[2 * n + k] = 2
        rows.append(parity_row)
        rhs.append(-parity_const)
    return rows, rhs, width


def _path_functional_row(
    tri: Triangulation, signs: list[int], path: NormalPath, width: int
) -> list[int]:
    """Coefficients of the path's log-parameter sum on the (p, q) unknowns."""
    row = [0] * width
    for tet, pair, rot in path_passes(tri, path):
        cp, cq = SLOT_PQ_COEFF[EDGE_SLOT[pair]]
        weight = rot * signs[tet]
        row[2 * tet] += weight * cp
        row[2 * tet + 1] += weight * cq
    return row


def _prune_kernel(
    tri: Triangulation, signs: list[int], kernel: list[list[int]]
) -> list[list[int]]:
    """Sub-lattice of kernel vectors annihilating the log functionals of
    all vertex-link simple cycles (every closed vertex-link path decomposes
    into those)."""
    if not kernel:
        return []
    width = len(kernel[0])
    rows = [
        _path_functional_row(tri, signs, path, width)
        for path in vertex_link_cycles(tri)
    ]
    if not rows:
        return [list(v) for v in kernel]
    action = [
        [sum(r[i] * k[i] for i in range(width)) for k in kernel] for r in rows
    ]
    combos = solve_integer_system(action, [0] * len(action))
    assert combos is not None  # homogeneous systems are always consistent
    pruned = []
    for c in combos.kernel:
        vec = [
            sum(c[j] * kernel[j][i] for j in range(len(kernel)))
            for i in range(width)
        ]
        pruned.append(vec)
    return pruned


def solve_flattenings(
    tri: Triangulation, shapes: list[complex], tol: float = 1e-9
) -> FlatteningAssignment:
    """Assign branch indices (p_i, q_i) meeting the edge and path conditions.

    The combined integer system is solved in Hermite normal form; the
    particular solution is canonicalized by reduction modulo the kernel
    lattice, so the output is deterministic.  Missing cusp paths yield a
    partial, 'edge-flattened only' assignment.
    """
    rows, rhs, width = _build_system(tri, shapes, tol)
    solution = solve_integer_system(rows, rhs)
    if solution is None:
        raise InconsistentSystemError(
            "flattening system has no integer solution; the triangulation "
            "data is invalid"
        )
    x = reduce_mod_lattice(solution.particular, solution.kernel)
    return _assignment_from_vector(tri, shapes, x, solution, tol)


def _assignment_from_vector(
    tri: Triangulation,
    shapes: list[complex],
    x: list[int],
    solution: IntegerSolution,
    tol: float,
) -> FlatteningAssignment:
    n = tri.num_tetrahedra
    signs = orientation_signs(tri)
    params = [
        ExtendedParam(shapes[t], x[2 * t], x[2 * t + 1]) for t in range(n)
    ]
    flats = [flatten(params[t]) for t in range(n)]

    edge_residuals = []
    for edge in edge_classes(tri):
        total = 0j
        for tet, pair, _ in edge.incidences:
            total += signs[tet] * flats[tet].component(EDGE_SLOT[pair])
        edge_residuals.append(total)

    path_residuals = []
    path_parities = []
    for path in tri.cusp_paths:
        total = 0j
        parity = 0
        for tet, pair, rot in path_passes(tri, path):
            slot = EDGE_SLOT[pair]
            total += rot * signs[tet] * flats[tet].component(slot)
            cp, cq = SLOT_PQ_COEFF[slot]
            parity += cp * x[2 * tet] + cq * x[2 * tet + 1]
            parity += _slot_parity_const(shapes[tet], slot)
        path_residuals.append(total)
        path_parities.append(parity % 2)

    jc = build_j_complex(tri)
    defect = integral_defect(jc, omega(tri, shapes), tol)
    return FlatteningAssignment(
        params=params,
        signs=signs,
        edge_residuals=edge_residuals,
        path_residuals=path_residuals,
        path_parities=path_parities,
        defect=defect,
        edge_flattened_only=not tri.cusp_paths,
        kernel=_prune_kernel(tri, signs, solution.kernel),
        raw_kernel=[list(v) for v in solution.kernel],
    )


def alternate_assignment(
    tri: Triangulation,
    shapes: list[complex],
    base: FlatteningAssignment,
    kernel_coeffs: list[int],
    tol: float = 1e-9,
) -> FlatteningAssignment:
    """Another particular solution: base + integer combination of kernel
    vectors (used to exercise solver-choice invariance)."""
    if len(kernel_coeffs) != len(base.kernel):
        raise ValueError("need one coefficient per kernel vector")
    x = [p for pair in base.pq() for p in pair]
    x = x + [0] * (len(base.kernel[0]) - len(x) if base.kernel else 0)
    for c, vec in zip(kernel_coeffs, base.kernel):
        x = [a + c * b for a, b in zip(x, vec)]
    dummy = IntegerSolution(x, base.kernel)
    return _assignment_from_vector(tri, shapes, x, dummy, tol)


def fundamental_element(
    tri: Triangulation, assignment: FlatteningAssignment
) -> EBElement:
    """sum_i eps_i [z_i, p_i, q_i] in ep mode."""
    terms: dict[ExtendedParam, int] = {}
    for sign, param in zip(assignment.signs, assignment.params):
        terms[param] = terms.get(param, 0) + sign
    return EBElement(terms, "ep")


def complex_volume(
    tri: Triangulation, shapes: list[complex], assignment: FlatteningAssignment
) -> tuple[float, float]:
    """(vol, cs) with vol = Im R and cs = -Re R reduced into [0, pi^2)."""
    value = r_of_element(fundamental_element(tri, assignment))
    vol = value.value.imag
    cs = reduce_mod(complex(-value.value.real, 0.0), PI_SQUARED).value.real
    return vol, cs


# ---------------------------------------------------------------------------
# Cycle relation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CycleSimplex:
    """One simplex of a cyclic configuration around a common edge E.

    ``edge_slot`` is the log-parameter slot of E in this simplex;
    ``top_slot``/``bottom_slot`` are the slots of the edges T_j and B_j of
    the common triangle with the next simplex.  The three slots must be
    distinct.
    """

    shape: complex
    p: int
    q: int
    sign: int
    edge_slot: int
    top_slot: int
    bottom_slot: int

    def __post_init__(self) -> None:
        if {self.edge_slot, self.top_slot, self.bottom_slot} != {0, 1, 2}:
            raise ValueError("edge, top and bottom slots must be distinct")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +-1")


def cycle_relation_check(
    simplices: list[CycleSimplex],
    base_point,
    tol: float = 1e-9,
) -> bool:
    """Verify the cycle relation through (R, nu).

    Preconditions: the signed log-parameter sum and the parity sum at the
    common edge vanish.  The primed flattenings add sign * pi i at the top
    slot and subtract it at the bottom slot; the primed and unprimed
    elements must have equal lifted-Rogers values modulo pi^2 and equal
    symbolic wedge images.
    """
    total = 0j
    parity = 0
    for s in simplices:
        param = ExtendedParam(s.shape, s.p, s.q)
        flat = flatten(param)
        total += s.sign * flat.component(s.edge_slot)
        cp, cq = SLOT_PQ_COEFF[s.edge_slot]
        parity += cp * s.p + cq * s.q + _slot_parity_const(s.shape, s.edge_slot)
    if abs(total) > tol:
        raise NonIntegralError(
            f"signed log-parameter sum around the edge is {total!r}, not 0"
        )
    if parity % 2:
        raise NonIntegralError("parity sum around the edge is odd")

    original: dict[ExtendedParam, int] = {}
    primed: dict[ExtendedParam, int] = {}
    for s in simplices:
        dp = s.sign * ((s.top_slot == 0) - (s.bottom_slot == 0))
        dq = s.sign * ((s.top_slot == 1) - (s.bottom_slot == 1))
        key = ExtendedParam(s.shape, s.p, s.q)
        key2 = ExtendedParam(s.shape, s.p + dp, s.q + dq)
        original[key] = original.get(key, 0) + s.sign
        primed[key2] = primed.get(key2, 0) + s.sign
    difference = EBElement(original) - EBElement(primed)
    r_ok = r_of_element(difference).distance_to_zero() < tol
    nu_ok = nu_symbolic(difference, base_point).is_zero()
    return r_ok and nu_ok
