# -*- coding: utf-8 -*-
"""Link diagrams on closed orientable surfaces via rotation systems.

A surface diagram reuses the planar PD structure but drops the planarity
invariant; the faces traced from the rotation system are the complementary
discs of a cellular embedding and the genus is (2 - V + E - F) / 2.

Simple loops avoiding the crossings correspond to cycles in the dual
graph (faces as nodes, one dual edge per diagram edge); their number of
intersections with the diagram is the cycle length, and their class in
first homology with Z/2 coefficients is the crossed-edge vector modulo
the span of the vertex coboundaries. On a surface produced as a spanning
state surface of a prime non-alternating planar diagram, the genus
reduction arc guarantees a homologically nontrivial loop meeting the
diagram exactly twice, so an alternating cellular diagram without one
cannot arise that way.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .pdcore import DiagramError, Face, PlanarDiagram, Refused
from .states import TuraevCellComplex


@dataclass(frozen=True)
class SurfaceDiagram:
    """A diagram cellularly embedded in a closed orientable surface."""

    crossings: tuple[tuple[int, int, int, int], ...]

    @staticmethod
    def from_rows(rows) -> "SurfaceDiagram":
        s = SurfaceDiagram(tuple(tuple(int(x) for x in row) for row in rows))
        s.validate()
        return s

    @staticmethod
    def from_planar(diagram: PlanarDiagram) -> "SurfaceDiagram":
        return SurfaceDiagram.from_rows(diagram.crossings)

    # The combinatorics is shared with PlanarDiagram through a borrowed
    # carrier; only the Euler test differs.
    @cached_property
    def _carrier(self) -> PlanarDiagram:
        return PlanarDiagram(self.crossings)

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def n_darts(self) -> int:
        return 4 * self.n

    def label(self, d: int) -> int:
        return self.crossings[d >> 2][d & 3]

    @property
    def alpha(self):
        return self._carrier.alpha

    @property
    def faces(self) -> tuple[Face, ...]:
        return self._carrier.faces

    @property
    def face_of_dart(self):
        return self._carrier.face_of_dart

    @property
    def edge_darts(self):
        return self._carrier.edge_darts

    @property
    def edge_labels(self):
        return self._carrier.edge_labels

    def validate(self) -> None:
        if not self.crossings:
            raise DiagramError("diagram has no crossings")
        for row in self.crossings:
            if len(row) != 4:
                raise DiagramError(f"crossing {row!r} does not have 4 slots")
        self._carrier.alpha
        if not self._carrier.is_connected:
            raise DiagramError("underlying 4-valent graph is disconnected")
        v, e, f = self.n, 2 * self.n, len(self.faces)
        if (2 - v + e - f) % 2:
            raise DiagramError("odd Euler defect; rotation system corrupted")

    @property
    def genus(self) -> int:
        return (2 - self.n + 2 * self.n - len(self.faces)) // 2

    def to_pd_text(self) -> str:
        return "genus-free: true\n" + " ".join("X[%d,%d,%d,%d]" % row for row in self.crossings)

    def is_alternating(self) -> bool:
        return all(
            (d1 & 1) != (d2 & 1) for d1, d2 in ((a & 3, b & 3) for a, b in self.edge_darts.values())
        )


def surface_genus(s: SurfaceDiagram) -> int:
    return s.genus


def parse_surface(text: str) -> SurfaceDiagram:
    """Parse PD text with an optional ``genus-free: true`` header line.

    The header disables the planarity requirement; the rotation system is
    read as a cellular embedding in the surface its faces determine.
    """
    from . import pdcore

    stripped = text.strip()
    if stripped.lower().startswith("genus-free:"):
        first, _, rest = stripped.partition("\n")
        if first.split(":", 1)[1].strip().lower() != "true":
            raise pdcore.ParseError("genus-free header must be 'true'")
        stripped = rest.strip()
    if stripped.startswith("{"):
        import json

        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise pdcore.ParseError(f"bad JSON: {exc}") from exc
        return SurfaceDiagram.from_rows(data["crossings"])
    rows = []
    pos = 0
    for m in pdcore._TERM_RE.finditer(stripped):
        if stripped[pos:m.start()].strip():
            raise pdcore.ParseError(f"unexpected text {stripped[pos:m.start()].strip()!r}")
        rows.append(tuple(int(g) for g in m.groups()))
        pos = m.end()
    if stripped[pos:].strip() or not rows:
        raise pdcore.ParseError("no X[a,b,c,d] terms found")
    return SurfaceDiagram.from_rows(rows)


# -- mod-2 homology of the dual complex --------------------------------------


class _Gf2Span:
    """Row-echelon span of bit vectors (ints), as in Gaussian elimination."""

    def __init__(self) -> None:
        self.rows: list[int] = []

    def add(self, vec: int) -> bool:
        """Insert; returns True when the vector was independent."""
        x = self.reduce(vec)
        if x:
            self.rows.append(x)
            self.rows.sort(reverse=True)
            return True
        return False

    def reduce(self, vec: int) -> int:
        x = vec
        for r in self.rows:
            x = min(x, x ^ r)
        return x

    def __contains__(self, vec: int) -> bool:
        return self.reduce(vec) == 0

    @property
    def rank(self) -> int:
        return len(self.rows)


def _edge_index(s: SurfaceDiagram) -> dict[int, int]:
    return {lab: i for i, lab in enumerate(s.edge_labels)}


def vertex_coboundary_span(s: SurfaceDiagram) -> _Gf2Span:
    """Span of the vertex stars; dual cycles in it are null-homologous."""
    idx = _edge_index(s)
    span = _Gf2Span()
    for c in range(s.n):
        vec = 0
        for slot in range(4):
            vec ^= 1 << idx[s.crossings[c][slot]]
        span.add(vec)
    return span


def homology_rank_check(s: SurfaceDiagram) -> int:
    """dim H1(F; Z/2) computed from the cell structure; equals 2 * genus."""
    idx = _edge_index(s)
    vertex_span = vertex_coboundary_span(s)
    face_span = _Gf2Span()
    for face in s.faces:
        vec = 0
        for d in face.darts:
            vec ^= 1 << idx[s.label(d)]
        face_span.add(vec)
    n_edges = len(idx)
    dim = n_edges - vertex_span.rank - face_span.rank
    if dim != 2 * s.genus:
        raise DiagramError(f"homology dimension {dim} disagrees with genus {s.genus}")
    return dim


@dataclass(frozen=True)
class DualLoop:
    """A simple loop avoiding crossings, as the cycle of edges it crosses
    and the faces it passes through."""

    edges: tuple[int, ...]
    face_path: tuple[int, ...]
    nontrivial: bool

    @property
    def intersections(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class LoopReport:
    surface_genus: int
    loops: tuple[DualLoop, ...]
    verdict: str  # "obstructed" | "loop-found" | "not-applicable"

    @property
    def minimum_intersections(self) -> int | None:
        vals = [l.intersections for l in self.loops if l.nontrivial]
        return min(vals) if vals else None

    def to_json_dict(self) -> dict:
        return {
            "genus": self.surface_genus,
            "verdict": self.verdict,
            "minIntersections": self.minimum_intersections,
            "loops": [
                {
                    "edges": list(l.edges),
                    "faces": list(l.face_path),
                    "nontrivial": l.nontrivial,
                    "intersections": l.intersections,
                }
                for l in self.loops
            ],
        }


def two_intersection_loops(s: SurfaceDiagram) -> LoopReport:
    """Loops meeting the diagram at most twice, with their homology.

    The verdict is "obstructed" when no homologically nontrivial loop
    meets the diagram exactly twice: such a surface diagram cannot be the
    state surface of a prime non-alternating planar diagram.
    """
    if not s.is_alternating():
        raise Refused("surface diagram is not alternating")
    if s.genus == 0:
        return LoopReport(0, (), "not-applicable")
    idx = _edge_index(s)
    span = vertex_coboundary_span(s)
    loops: list[DualLoop] = []
    # One face on both sides of an edge: a loop crossing it once.
    for lab, (d1, d2) in sorted(s.edge_darts.items()):
        f1, f2 = s.face_of_dart[d1], s.face_of_dart[d2]
        if f1 == f2:
            vec = 1 << idx[lab]
            loops.append(DualLoop((lab,), (f1,), vec not in span))
    # Two faces sharing two or more edges: loops crossing two of them.
    shared: dict[tuple[int, int], list[int]] = {}
    for lab, (d1, d2) in s.edge_darts.items():
        f1, f2 = s.face_of_dart[d1], s.face_of_dart[d2]
        if f1 != f2:
            shared.setdefault((min(f1, f2), max(f1, f2)), []).append(lab)
    for (f1, f2), labs in sorted(shared.items()):
        labs.sort()
        for i in range(len(labs)):
            for j in range(i + 1, len(labs)):
                vec = (1 << idx[labs[i]]) ^ (1 << idx[labs[j]])
                loops.append(DualLoop((labs[i], labs[j]), (f1, f2), vec not in span))
    found = any(l.nontrivial and l.intersections == 2 for l in loops)
    return LoopReport(s.genus, tuple(loops), "loop-found" if found else "obstructed")


@dataclass(frozen=True)
class HayashiResult:
    value: int | None
    certified: bool
    examined: int

    def to_json_dict(self) -> dict:
        return {
            "complexity": self.value,
            "certified": self.certified,
            "marker": "exact" if self.certified else "upper-bound",
            "loopsExamined": self.examined,
        }


def is_reduced(s: SurfaceDiagram) -> bool:
    """No nugatory crossing.

    A crossing is nugatory when a loop meeting the diagram only there
    bounds a disc. Combinatorially: one face spans two opposite corners,
    and the loop through them, pushed off the crossing to either side, is
    null-homologous. On the sphere the homology condition is automatic and
    this is the usual isthmus test.
    """
    corner_faces = {}
    for face in s.faces:
        for (c, k) in face.corners:
            corner_faces[(c, k)] = face.id
    idx = _edge_index(s)
    span = vertex_coboundary_span(s)
    for c in range(s.n):
        row = s.crossings[c]
        for k in (0, 1):
            if corner_faces[(c, k)] != corner_faces[(c, k + 2)]:
                continue
            for side in (
                (1 << idx[row[(k + 1) % 4]]) ^ (1 << idx[row[(k + 2) % 4]]),
                (1 << idx[row[k]]) ^ (1 << idx[row[(k + 3) % 4]]),
            ):
                if side in span:
                    return False
    return True


def hayashi_complexity(s: SurfaceDiagram, max_len: int | None = None) -> HayashiResult:
    """Minimal intersections of an essential simple loop with the diagram.

    Searches simple dual cycles up to ``max_len`` (default: number of
    faces) with nonzero mod-2 class. A minimum found at length <= 2 is
    exact, since a loop meeting the diagram in k points with k <= 2 is a
    simple dual cycle of length k; longer minima are upper bounds only.
    """
    if s.genus < 1:
        raise Refused("complexity is defined for positive-genus surfaces")
    if not s.is_alternating():
        raise Refused("surface diagram is not alternating")
    if not is_reduced(s):
        raise Refused("surface diagram is not reduced")
    homology_rank_check(s)
    nf = len(s.faces)
    limit = nf if max_len is None else min(max_len, nf)
    idx = _edge_index(s)
    span = vertex_coboundary_span(s)
    # Dual multigraph: per face, (neighbor face, edge label).
    adjacency: list[list[tuple[int, int]]] = [[] for _ in range(nf)]
    best: int | None = None
    examined = 0
    for lab, (d1, d2) in sorted(s.edge_darts.items()):
        f1, f2 = s.face_of_dart[d1], s.face_of_dart[d2]
        if f1 == f2:
            examined += 1
            if (1 << idx[lab]) not in span:
                best = 1 if best is None else min(best, 1)
        else:
            adjacency[f1].append((f2, lab))
            adjacency[f2].append((f1, lab))
    for a in adjacency:
        a.sort()

    # Simple cycles rooted at their smallest face, extended by DFS.
    def dfs(root: int, node: int, visited: set[int], vec: int, length: int) -> None:
        nonlocal best, examined
        if best is not None and length >= best:
            return
        for nxt, lab in adjacency[node]:
            if nxt == root and length >= 1:
                examined += 1
                cycle_vec = vec ^ (1 << idx[lab])
                if cycle_vec and cycle_vec not in span:
                    total = length + 1
                    if best is None or total < best:
                        best = total
            if nxt <= root or nxt in visited:
                continue
            if length + 1 >= limit:
                continue
            visited.add(nxt)
            dfs(root, nxt, visited, vec ^ (1 << idx[lab]), length + 1)
            visited.remove(nxt)

    for root in range(nf):
        if best is not None and best <= 2:
            break
        dfs(root, root, {root}, 0, 0)
    certified = best is not None and best <= 2
    return HayashiResult(best, certified, examined)


# -- re-expressing a state surface complex as a surface diagram ---------------


def from_turaev_complex(complex_: TuraevCellComplex) -> SurfaceDiagram:
    """The diagram on its spanning state surface, as a rotation system.

    The oriented 2-cell walks define the face permutation; composing with
    the edge involution gives the rotation at each crossing. Over/under is
    reassigned per crossing so that every edge alternates, which the
    surface always admits.
    """
    diagram = complex_.diagram
    nd = diagram.n_darts
    alpha = diagram.alpha
    phi = [-1] * nd
    for cell_index in range(len(complex_.cells)):
        walk = complex_.oriented_walk(cell_index)
        for i, d in enumerate(walk):
            nxt = walk[(i + 1) % len(walk)]
            if phi[d] != -1:
                raise DiagramError("cell walks overlap; orientation witness invalid")
            phi[d] = nxt
    if any(p < 0 for p in phi):
        raise DiagramError("cell walks do not cover every dart")
    rot = [phi[alpha[d]] for d in range(nd)]
    # Group darts into rotation cycles per crossing; they must be 4-cycles
    # alternating between the two strands of the crossing.
    new_rows: list[list[int]] = []
    order: list[list[int]] = []
    for c in range(diagram.n):
        d0 = 4 * c
        cycle = [d0]
        while True:
            nxt = rot[cycle[-1]]
            if nxt == d0:
                break
            cycle.append(nxt)
            if len(cycle) > 4:
                raise DiagramError("rotation orbit exceeds the crossing valence")
        if len(cycle) != 4 or any(d >> 2 != c for d in cycle):
            raise DiagramError("rotation orbits do not match the crossings")
        if (cycle[0] & 1) != (cycle[2] & 1) or (cycle[1] & 1) != (cycle[3] & 1):
            raise DiagramError("strands do not interleave around a crossing")
        order.append(cycle)
    # Choose per crossing which strand counts as under so that every edge
    # alternates on the surface; propagate the parity constraints.
    flip: list[int | None] = [None] * diagram.n
    # under_parity[c] = parity bit (dart & 1) of the strand taken as under
    # when flip[c] == 0.
    constraints: list[list[tuple[int, int]]] = [[] for _ in range(diagram.n)]
    pos_in_cycle = {}
    for c, cycle in enumerate(order):
        for k, d in enumerate(cycle):
            pos_in_cycle[d] = k
    for d1 in range(nd):
        d2 = alpha[d1]
        if d1 > d2:
            continue
        c1, c2 = d1 >> 2, d2 >> 2
        # End is "under with flip 0" iff its cycle position is even.
        p1 = pos_in_cycle[d1] & 1
        p2 = pos_in_cycle[d2] & 1
        # Alternation requires underness to differ: flip1 ^ flip2 == p1 ^ p2 ^ 1.
        constraints[c1].append((c2, p1 ^ p2 ^ 1))
        constraints[c2].append((c1, p1 ^ p2 ^ 1))
    flip[0] = 0
    stack = [0]
    while stack:
        c = stack.pop()
        for c2, want in constraints[c]:
            target = flip[c] ^ want
            if flip[c2] is None:
                flip[c2] = target
                stack.append(c2)
            elif flip[c2] != target:
                raise DiagramError("surface diagram cannot be made alternating")
    for c, cycle in enumerate(order):
        shift = flip[c] or 0
        arranged = cycle[shift:] + cycle[:shift]
        new_rows.append([diagram.label(d) for d in arranged])
    out = SurfaceDiagram.from_rows(new_rows)
    if out.genus != complex_.genus:
        raise DiagramError("surface genus disagrees with the cell complex")
    if not out.is_alternating():
        raise DiagramError("re-expressed diagram is not alternating")
    return out
