"""Quasi-simplicial ideal triangulations: data model, parser, derived data.

A triangulation is a list of tetrahedra whose faces are glued in pairs.
Face f of a tetrahedron is the face opposite vertex f; a gluing stores the
target tetrahedron and a vertex permutation ``perm`` (length-4 array,
perm[v] = image vertex) carrying face f to face perm[f].  The gluing
relation must be a fixed-point-free involution with inverse permutations,
and the complex must be orientable away from its vertices.

Derived structure: edge classes (orbits of tetrahedron edges under the
gluings), vertex classes, face classes, orientation signs, and normal
paths.  A normal path is a closed sequence of steps (tet, enter_face,
exit_face); within each tetrahedron it passes the unique edge shared by the
two faces.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import TriangulationError
from .geometry import edge_pair

_PERM_PARITY_CACHE: dict[tuple[int, ...], int] = {}


def perm_parity(perm: tuple[int, ...]) -> int:
    """+1 for even permutations of (0,1,2,3), -1 for odd."""
    if perm in _PERM_PARITY_CACHE:
        return _PERM_PARITY_CACHE[perm]
    inversions = sum(
        1
        for i in range(4)
        for j in range(i + 1, 4)
        if perm[i] > perm[j]
    )
    sign = -1 if inversions % 2 else 1
    _PERM_PARITY_CACHE[perm] = sign
    return sign


@dataclass(frozen=True)
class Gluing:
    tet: int
    perm: tuple[int, int, int, int]

    def image_of_face(self, face: int) -> int:
        return self.perm[face]


@dataclass(frozen=True)
class PathStep:
    tet: int
    enter_face: int
    exit_face: int

    def passed_pair(self) -> tuple[int, int]:
        a, b = sorted(set(range(4)) - {self.enter_face, self.exit_face})
        return (a, b)


@dataclass(frozen=True)
class NormalPath:
    """Closed normal path given by its cyclic step list."""

    steps: tuple[PathStep, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def reversed(self) -> "NormalPath":
        return NormalPath(
            tuple(
                PathStep(s.tet, s.exit_face, s.enter_face)
                for s in reversed(self.steps)
            )
        )


@dataclass(frozen=True)
class EdgeClass:
    """Orbit of (tet, vertex-pair) incidences around one edge of the complex.

    ``incidences`` lists (tet, pair, orientation) in cyclic order around the
    edge; orientation records whether the propagated edge direction agrees
    with the pair's canonical (min, max) order.
    """

    index: int
    incidences: tuple[tuple[int, tuple[int, int], int], ...]

    @property
    def valence(self) -> int:
        return len(self.incidences)

    def endpoints(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Endpoint (tet, vertex) slots of the representative incidence,
        oriented consistently with the stored orientation."""
        tet, (a, b), orient = self.incidences[0]
        return ((tet, a), (tet, b)) if orient > 0 else ((tet, b), (tet, a))


@dataclass
class Triangulation:
    name: str
    gluings: list[list[Gluing]]          # [tet][face]
    cusp_paths: list[NormalPath] = field(default_factory=list)
    shape_hints: list[complex] | None = None

    @property
    def num_tetrahedra(self) -> int:
        return len(self.gluings)

    def gluing(self, tet: int, face: int) -> Gluing:
        return self.gluings[tet][face]


# ---------------------------------------------------------------------------
# Parsing and validation
# ---------------------------------------------------------------------------

def _require_keys(obj: dict, allowed: set[str], required: set[str], where: str):
    unknown = set(obj) - allowed
    if unknown:
        raise TriangulationError(f"unknown keys {sorted(unknown)} in {where}")
    missing = required - set(obj)
    if missing:
        raise TriangulationError(f"missing keys {sorted(missing)} in {where}")


def parse_triangulation(document: dict | str | bytes) -> Triangulation:
    """Parse and validate the JSON triangulation format.

    Checks: schema strictness, permutation validity, fixed-point-free
    involution with inverse permutations, face carried to face, orientability
    and cusp path connectivity.
    """
    if isinstance(document, (str, bytes)):
        document = json.loads(document)
    if not isinstance(document, dict):
        raise TriangulationError("triangulation document must be an object")
    _require_keys(
        document,
        {"name", "tetrahedra", "cusp_paths", "shapes"},
        {"name", "tetrahedra"},
        "triangulation",
    )
    name = document["name"]
    if not isinstance(name, str):
        raise TriangulationError("name must be a string")
    tets = document["tetrahedra"]
    if not isinstance(tets, list) or not tets:
        raise TriangulationError("tetrahedra must be a non-empty list")

    gluings: list[list[Gluing]] = []
    for t, entry in enumerate(tets):
        if not isinstance(entry, dict):
            raise TriangulationError(f"tetrahedron {t} must be an object")
        _require_keys(entry, {"gluings"}, {"gluings"}, f"tetrahedron {t}")
        raw = entry["gluings"]
        if not isinstance(raw, list) or len(raw) != 4:
            raise TriangulationError(f"tetrahedron {t} needs exactly 4 gluings")
        row = []
        for f, g in enumerate(raw):
            if not isinstance(g, dict):
                raise TriangulationError(f"gluing ({t},{f}) must be an object")
            _require_keys(g, {"tet", "perm"}, {"tet", "perm"}, f"gluing ({t},{f})")
            target = g["tet"]
            perm = g["perm"]
            if not isinstance(target, int) or not 0 <= target < len(tets):
                raise TriangulationError(f"gluing ({t},{f}) targets bad tet")
            if (
                not isinstance(perm, list)
                or len(perm) != 4
                or sorted(perm) != [0, 1, 2, 3]
            ):
                raise TriangulationError(
                    f"gluing ({t},{f}) needs a permutation of 0..3"
                )
            row.append(Gluing(target, tuple(perm)))
        gluings.append(row)

    for t in range(len(tets)):
        for f in range(4):
            g = gluings[t][f]
            f_img = g.image_of_face(f)
            if (g.tet, f_img) == (t, f):
                raise TriangulationError(
                    f"face ({t},{f}) is glued to itself"
                )
            back = gluings[g.tet][f_img]
            inverse = tuple(g.perm.index(v) for v in range(4))
            if back.tet != t or back.perm != inverse:
                raise TriangulationError(
                    f"gluing ({t},{f}) is not involutive with inverse "
                    "permutation"
                )

    tri = Triangulation(name=name, gluings=gluings)

    orientation_signs(tri)  # raises for non-orientable complexes

    raw_paths = document.get("cusp_paths", [])
    if not isinstance(raw_paths, list):
        raise TriangulationError("cusp_paths must be a list")
    for k, raw_path in enumerate(raw_paths):
        if not isinstance(raw_path, list) or not raw_path:
            raise TriangulationError(f"cusp path {k} must be a non-empty list")
        steps = []
        for s, step in enumerate(raw_path):
            if not isinstance(step, dict):
                raise TriangulationError(f"step {s} of cusp path {k} malformed")
            _require_keys(
                step,
                {"tet", "enter_face", "exit_face"},
                {"tet", "enter_face", "exit_face"},
                f"cusp path {k} step {s}",
            )
            tet, fin, fout = step["tet"], step["enter_face"], step["exit_face"]
            if not all(isinstance(v, int) for v in (tet, fin, fout)):
                raise TriangulationError(f"cusp path {k} step {s}: ints required")
            steps.append(PathStep(tet, fin, fout))
        path = NormalPath(tuple(steps))
        validate_normal_path(tri, path)
        tri.cusp_paths.append(path)

    shapes = document.get("shapes")
    if shapes is not None:
        if not isinstance(shapes, list) or len(shapes) != len(tets):
            raise TriangulationError("shapes must list one [re, im] per tet")
        hints = []
        for entry in shapes:
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(v, (int, float)) for v in entry)
            ):
                raise TriangulationError("shapes entries must be [re, im]")
            hints.append(complex(entry[0], entry[1]))
        tri.shape_hints = hints
    return tri


def validate_normal_path(tri: Triangulation, path: NormalPath) -> None:
    """Check step-face sanity, gluing linkage and closedness."""
    n = len(path.steps)
    if n == 0:
        raise TriangulationError("normal path must have at least one step")
    for i, step in enumerate(path.steps):
        if not 0 <= step.tet < tri.num_tetrahedra:
            raise TriangulationError(f"path step {i} references bad tet")
        if not ({step.enter_face, step.exit_face} <= {0, 1, 2, 3}):
            raise TriangulationError(f"path step {i} has bad faces")
        if step.enter_face == step.exit_face:
            raise TriangulationError(
                f"path step {i} enters and exits the same face"
            )
        nxt = path.steps[(i + 1) % n]
        g = tri.gluing(step.tet, step.exit_face)
        if g.tet != nxt.tet or g.image_of_face(step.exit_face) != nxt.enter_face:
            raise TriangulationError(
                f"path steps {i} -> {(i + 1) % n} are not linked by a gluing"
            )


# ---------------------------------------------------------------------------
# Derived combinatorics
# ---------------------------------------------------------------------------

def edge_classes(tri: Triangulation) -> list[EdgeClass]:
    """Orbits of (tet, edge) incidences, each in cyclic order around the
    edge with propagated direction signs."""
    all_pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    seen: set[tuple[int, tuple[int, int]]] = set()
    classes: list[EdgeClass] = []
    for t0 in range(tri.num_tetrahedra):
        for pair0 in all_pairs:
            if (t0, pair0) in seen:
                continue
            incidences = []
            # walk around the edge: cross the face with the larger index
            # first; direction (+1) means the canonical (min, max) order.
            tet, pair, orient = t0, pair0, +1
            cross_face = max(set(range(4)) - set(pair))
            while True:
                incidences.append((tet, pair, orient))
                seen.add((tet, pair))
                g = tri.gluing(tet, cross_face)
                directed = pair if orient > 0 else (pair[1], pair[0])
                image = (g.perm[directed[0]], g.perm[directed[1]])
                entered_through = g.image_of_face(cross_face)
                tet = g.tet
                pair = edge_pair(*image)
                orient = +1 if image[0] < image[1] else -1
                cross_face = next(
                    f
                    for f in set(range(4)) - set(pair)
                    if f != entered_through
                )
                if (tet, pair) == (t0, pair0):
                    if orient != +1:
                        raise TriangulationError("edge link is not orientable")
                    break
            classes.append(
                EdgeClass(index=len(classes), incidences=tuple(incidences))
            )
    return classes


def vertex_classes(tri: Triangulation) -> list[list[tuple[int, int]]]:
    """Orbits of (tet, vertex) slots under the face gluings."""
    seen: set[tuple[int, int]] = set()
    classes = []
    for t0 in range(tri.num_tetrahedra):
        for v0 in range(4):
            if (t0, v0) in seen:
                continue
            orbit = []
            stack = [(t0, v0)]
            while stack:
                tet, v = stack.pop()
                if (tet, v) in seen:
                    continue
                seen.add((tet, v))
                orbit.append((tet, v))
                for f in range(4):
                    if f == v:
                        continue
                    g = tri.gluing(tet, f)
                    stack.append((g.tet, g.perm[v]))
            classes.append(sorted(orbit))
    return classes


def face_classes(tri: Triangulation) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Glued face pairs ((tet, face), (tet', face')), each listed once."""
    out = []
    for t in range(tri.num_tetrahedra):
        for f in range(4):
            g = tri.gluing(t, f)
            other = (g.tet, g.image_of_face(f))
            if (t, f) <= other:
                out.append(((t, f), other))
    return out


def orientation_signs(tri: Triangulation) -> list[int]:
    """Signs epsilon_i making glued faces cancel in the boundary of
    sum epsilon_i Delta_i; raises for non-orientable complexes.

    Across a gluing with permutation sigma the signs must satisfy
    epsilon' = -sign(sigma) * epsilon; the first tetrahedron of every
    connected component is normalized to +1.
    """
    n = tri.num_tetrahedra
    signs: list[int | None] = [None] * n
    for start in range(n):
        if signs[start] is not None:
            continue
        signs[start] = +1
        stack = [start]
        while stack:
            t = stack.pop()
            for f in range(4):
                g = tri.gluing(t, f)
                expected = -perm_parity(g.perm) * signs[t]
                if signs[g.tet] is None:
                    signs[g.tet] = expected
                    stack.append(g.tet)
                elif signs[g.tet] != expected:
                    raise TriangulationError(
                        "complex is not orientable (gluing at "
                        f"({t},{f}) conflicts)"
                    )
    return [s for s in signs]  # type: ignore[misc]


def edge_loop(tri: Triangulation, edge: EdgeClass) -> NormalPath:
    """The normal path that circles the edge, one step per incidence."""
    t0, pair0, _ = edge.incidences[0]
    tet, pair, orient = t0, pair0, +1
    cross_face = max(set(range(4)) - set(pair))
    exits: list[tuple[int, tuple[int, int], int]] = []
    entries: list[int] = []
    while True:
        exits.append((tet, pair, cross_face))
        g = tri.gluing(tet, cross_face)
        entered = g.image_of_face(cross_face)
        directed = pair if orient > 0 else (pair[1], pair[0])
        image = (g.perm[directed[0]], g.perm[directed[1]])
        tet, pair = g.tet, edge_pair(*image)
        orient = +1 if image[0] < image[1] else -1
        entries.append(entered)
        cross_face = next(
            f for f in set(range(4)) - set(pair) if f != entered
        )
        if (tet, pair) == (t0, pair0):
            if orient != +1:
                raise TriangulationError("edge link is not orientable")
            break
    steps = tuple(
        PathStep(tet, entries[k - 1], exit_face)
        for k, (tet, _pair, exit_face) in enumerate(exits)
    )
    return NormalPath(steps)


def infer_path_vertices(tri: Triangulation, path: NormalPath) -> list[int]:
    """Vertex tracked by each step of a vertex-link normal path.

    The vertex is an endpoint of every passed edge and must map to the next
    step's vertex under the connecting gluing.  Edge loops admit both
    endpoint choices; the first consistent one (smallest starting vertex)
    is returned.
    """
    validate_normal_path(tri, path)
    n = len(path.steps)
    first = path.steps[0]
    for v_start in first.passed_pair():
        vertices = [v_start]
        ok = True
        for i, step in enumerate(path.steps):
            v = vertices[-1]
            if v in (step.enter_face, step.exit_face):
                ok = False
                break
            g = tri.gluing(step.tet, step.exit_face)
            vertices.append(g.perm[v])
        if ok and vertices[-1] == v_start:
            return vertices[:-1]
    raise TriangulationError("path does not stay in a single vertex link")


def _rotation_sign(vertex: int, other: int, enter_face: int, exit_face: int) -> int:
    """Sign of the step's turn around the passed edge as viewed from the
    tracked vertex, +1 for counterclockwise: parity of the permutation
    (vertex, other, enter_face, exit_face)."""
    return perm_parity((vertex, other, enter_face, exit_face))


def path_passes(
    tri: Triangulation, path: NormalPath
) -> list[tuple[int, tuple[int, int], int]]:
    """Per step: (tet, passed edge pair, rotation sign as viewed from the
    tracked vertex)."""
    vertices = infer_path_vertices(tri, path)
    out = []
    for step, v in zip(path.steps, vertices):
        pair = step.passed_pair()
        other = pair[0] if pair[1] == v else pair[1]
        sign = _rotation_sign(v, other, step.enter_face, step.exit_face)
        out.append((step.tet, pair, sign))
    return out


def vertex_link_cycles(
    tri: Triangulation, max_cycles: int = 4000
) -> list[NormalPath]:
    """All state-simple closed normal paths in the vertex links.

    States are (tet, tracked vertex, enter face); every closed normal path
    decomposes into these simple cycles, so their log-parameter functionals
    span those of all vertex-link paths.  Cycles are deduplicated up to
    rotation.
    """
    def successor(tet: int, v: int, f_in: int, f_out: int):
        g = tri.gluing(tet, f_out)
        return (g.tet, g.perm[v], g.image_of_face(f_out))

    cycles: list[NormalPath] = []
    seen: set[tuple] = set()
    states = [
        (t, v, f)
        for t in range(tri.num_tetrahedra)
        for v in range(4)
        for f in range(4)
        if f != v
    ]
    for start in states:
        stack = [(start, [], {start})]
        while stack and len(cycles) < max_cycles:
            state, steps, visited = stack.pop()
            tet, v, f_in = state
            for f_out in range(4):
                if f_out in (v, f_in):
                    continue
                nxt = successor(tet, v, f_in, f_out)
                new_steps = steps + [(tet, f_in, f_out)]
                if nxt == start:
                    rotations = [
                        tuple(new_steps[i:] + new_steps[:i])
                        for i in range(len(new_steps))
                    ]
                    canon = min(rotations)
                    if canon not in seen:
                        seen.add(canon)
                        cycles.append(
                            NormalPath(tuple(PathStep(*s) for s in canon))
                        )
                elif nxt not in visited and nxt > start:
                    stack.append((nxt, new_steps, visited | {nxt}))
    return cycles
