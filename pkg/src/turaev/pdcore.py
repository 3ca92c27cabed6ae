# -*- coding: utf-8 -*-
"""Planar link diagrams as rotation systems.

A diagram is a list of crossings. Each crossing carries four *slots* in
counterclockwise cyclic order, numbered 0..3; slots 0 and 2 hold the two
ends of the under-strand, slots 1 and 3 the over-strand. Each slot holds an
edge label, and every edge label occurs exactly twice over the whole
diagram. This is the usual PD code with the over/under convention pinned
down once and for all.

Internally a *dart* is a slot occurrence, encoded as the integer
``4 * crossing + slot``. Three permutations on darts drive everything:

    sigma(d)  next slot counterclockwise at the same crossing,
    alpha(d)  the other occurrence of d's edge label,
    phi(d)    = sigma(alpha(d)), whose orbits are the faces.

With counterclockwise rotation, a phi orbit walks a face boundary keeping
the face on the right of every dart; the dart ``(c, s)`` in a face orbit
sits at the corner of that face between slots ``s - 1`` and ``s`` of ``c``.
A diagram is accepted as planar when every edge label occurs twice, the
4-valent graph is connected, and V - E + F = 2 for the traced faces.

Text format: whitespace-separated terms ``X[a,b,c,d]`` with positive
integer edge labels; the order of terms is the crossing index. JSON mirror:
``{"crossings": [[a,b,c,d], ...]}``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

BLACK = "black"
WHITE = "white"


class DiagramError(ValueError):
    """Raised when input data does not define a valid diagram."""


class ParseError(DiagramError):
    """Raised on malformed PD text or JSON."""


class Refused(Exception):
    """An operation declined its input for a structural reason.

    Distinct from DiagramError: the input is a valid diagram, but outside
    the operation's contract (composite, alternating, wrong genus, ...).
    """

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


def crossing_of(dart: int) -> int:
    return dart >> 2


def slot_of(dart: int) -> int:
    return dart & 3


def dart(crossing: int, slot: int) -> int:
    return 4 * crossing + slot


def sigma(dart: int) -> int:
    """Next dart counterclockwise around the same crossing."""
    return (dart & ~3) | ((dart + 1) & 3)


@dataclass(frozen=True)
class Face:
    """One complementary region, as its boundary walk of darts."""

    id: int
    darts: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.darts)

    @property
    def corners(self) -> tuple[tuple[int, int], ...]:
        """(crossing, corner) incidences; corner k spans slots k, k+1."""
        return tuple((crossing_of(d), (slot_of(d) - 1) % 4) for d in self.darts)

    def edges(self, diagram: "PlanarDiagram") -> tuple[int, ...]:
        return tuple(diagram.edge_of_dart(d) for d in self.darts)


@dataclass(frozen=True)
class Coloring:
    """Proper 2-coloring of faces; colors[face id] is BLACK or WHITE."""

    colors: tuple[str, ...]

    def color(self, face_id: int) -> str:
        return self.colors[face_id]

    def swapped(self) -> "Coloring":
        flip = {BLACK: WHITE, WHITE: BLACK}
        return Coloring(tuple(flip[c] for c in self.colors))


@dataclass(frozen=True)
class CompositeCircle:
    """A simple loop meeting the diagram in two edge points with crossings
    on both sides. ``sides`` is the induced crossing partition."""

    edges: tuple[int, int]
    faces: tuple[int, int]
    sides: tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class PlanarDiagram:
    """An immutable planar link diagram.

    ``crossings[i]`` is the 4-tuple of edge labels at crossing i, in
    counterclockwise slot order, slots 0/2 under and 1/3 over.
    """

    crossings: tuple[tuple[int, int, int, int], ...]

    @staticmethod
    def from_rows(rows: Iterable[Sequence[int]], *, allow_disconnected: bool = False) -> "PlanarDiagram":
        d = PlanarDiagram(tuple(tuple(int(x) for x in row) for row in rows))
        d.validate(allow_disconnected=allow_disconnected)
        return d

    # -- basic queries ----------------------------------------------------

    @property
    def n(self) -> int:
        """Crossing count."""
        return len(self.crossings)

    @property
    def n_darts(self) -> int:
        return 4 * len(self.crossings)

    def label(self, d: int) -> int:
        return self.crossings[d >> 2][d & 3]

    edge_of_dart = label

    @cached_property
    def alpha(self) -> tuple[int, ...]:
        """Dart involution pairing the two occurrences of each label."""
        where: dict[int, list[int]] = {}
        for d in range(self.n_darts):
            where.setdefault(self.label(d), []).append(d)
        bad = sorted(lab for lab, ds in where.items() if len(ds) != 2)
        if bad:
            raise DiagramError(f"edge labels must occur exactly twice, violated by {bad}")
        a = [0] * self.n_darts
        for d1, d2 in where.values():
            a[d1], a[d2] = d2, d1
        return tuple(a)

    @cached_property
    def edge_labels(self) -> tuple[int, ...]:
        return tuple(sorted({self.label(d) for d in range(self.n_darts)}))

    @cached_property
    def edge_darts(self) -> dict[int, tuple[int, int]]:
        """label -> (smaller dart, larger dart)."""
        out: dict[int, tuple[int, int]] = {}
        for d in range(self.n_darts):
            a = self.alpha[d]
            if d < a:
                out[self.label(d)] = (d, a)
        return out

    @property
    def n_edges(self) -> int:
        return 2 * len(self.crossings)

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        alpha = self.alpha
        seen = [False] * self.n_darts
        faces: list[Face] = []
        for start in range(self.n_darts):
            if seen[start]:
                continue
            walk = []
            d = start
            while not seen[d]:
                seen[d] = True
                walk.append(d)
                d = sigma(alpha[d])
            faces.append(Face(len(faces), tuple(walk)))
        return tuple(faces)

    @cached_property
    def face_of_dart(self) -> tuple[int, ...]:
        out = [0] * self.n_darts
        for f in self.faces:
            for d in f.darts:
                out[d] = f.id
        return tuple(out)

    def face_at_corner(self, crossing: int, corner: int) -> int:
        """Face occupying the corner between slots corner, corner+1."""
        return self.face_of_dart[dart(crossing, (corner + 1) % 4)]

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components of the 4-valent graph, as crossing sets."""
        if not self.crossings:
            return ()
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for d in range(self.n_darts):
            a, b = find(d >> 2), find(self.alpha[d] >> 2)
            if a != b:
                parent[a] = b
        groups: dict[int, list[int]] = {}
        for c in range(self.n):
            groups.setdefault(find(c), []).append(c)
        return tuple(tuple(g) for g in sorted(groups.values()))

    @property
    def is_connected(self) -> bool:
        return len(self.components) <= 1

    def validate(self, *, allow_disconnected: bool = False) -> None:
        if not self.crossings:
            raise DiagramError("diagram has no crossings")
        for row in self.crossings:
            if len(row) != 4:
                raise DiagramError(f"crossing {row!r} does not have 4 slots")
        self.alpha  # label multiplicity
        if not allow_disconnected and not self.is_connected:
            raise DiagramError("underlying 4-valent graph is disconnected")
        # Euler test per component: V - E + F = 2 exactly on the sphere.
        face_comp: dict[int, int] = {}
        comp_of = {}
        for i, comp in enumerate(self.components):
            for c in comp:
                comp_of[c] = i
        for f in self.faces:
            face_comp[f.id] = comp_of[f.darts[0] >> 2]
        for i, comp in enumerate(self.components):
            v = len(comp)
            e = 2 * v
            fcount = sum(1 for f in self.faces if face_comp[f.id] == i)
            if v - e + fcount != 2:
                raise DiagramError(
                    f"rotation system is not planar: V-E+F = {v - e + fcount} on component {i}"
                )

    # -- serialization ----------------------------------------------------

    def to_pd_text(self) -> str:
        return " ".join("X[%d,%d,%d,%d]" % row for row in self.crossings)

    def to_json(self) -> str:
        return json.dumps({"crossings": [list(row) for row in self.crossings]})

    def __str__(self) -> str:
        return self.to_pd_text()


_TERM_RE = re.compile(r"X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]")


def parse_pd(text: str, *, allow_disconnected: bool = False) -> PlanarDiagram:
    """Parse PD text ``X[a,b,c,d] ...`` into a validated diagram."""
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty PD text")
    if stripped.startswith("{"):
        return parse_json(stripped, allow_disconnected=allow_disconnected)
    rows = []
    pos = 0
    for m in _TERM_RE.finditer(stripped):
        if stripped[pos:m.start()].strip():
            raise ParseError(f"unexpected text {stripped[pos:m.start()].strip()!r} in PD code")
        rows.append(tuple(int(g) for g in m.groups()))
        pos = m.end()
    if stripped[pos:].strip():
        raise ParseError(f"unexpected text {stripped[pos:].strip()!r} in PD code")
    if not rows:
        raise ParseError("no X[a,b,c,d] terms found")
    return PlanarDiagram.from_rows(rows, allow_disconnected=allow_disconnected)


def parse_json(text: str, *, allow_disconnected: bool = False) -> PlanarDiagram:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}") from exc
    if not isinstance(data, dict) or "crossings" not in data:
        raise ParseError('JSON diagram must be {"crossings": [[a,b,c,d], ...]}')
    return PlanarDiagram.from_rows(data["crossings"], allow_disconnected=allow_disconnected)


# -- interrogation ---------------------------------------------------------


def faces(diagram: PlanarDiagram) -> tuple[Face, ...]:
    return diagram.faces


def checkerboard(diagram: PlanarDiagram, *, black_face: int | None = None) -> Coloring:
    """Proper 2-coloring of the faces.

    By default the face at corner 0 of crossing 0 (between slots 0 and 1)
    is black, which makes the coloring deterministic. Pass ``black_face``
    to re-anchor.
    """
    nf = len(diagram.faces)
    colors: list[str | None] = [None] * nf
    adjacency: list[set[int]] = [set() for _ in range(nf)]
    for lab, (d1, d2) in diagram.edge_darts.items():
        f1, f2 = diagram.face_of_dart[d1], diagram.face_of_dart[d2]
        if f1 == f2:
            raise DiagramError(f"edge {lab} has the same face on both sides")
        adjacency[f1].add(f2)
        adjacency[f2].add(f1)
    anchor = diagram.face_at_corner(0, 0) if black_face is None else black_face
    colors[anchor] = BLACK
    stack = [anchor]
    while stack:
        f = stack.pop()
        for g in sorted(adjacency[f]):
            want = WHITE if colors[f] == BLACK else BLACK
            if colors[g] is None:
                colors[g] = want
                stack.append(g)
            elif colors[g] != want:
                raise DiagramError("face adjacency graph is not 2-colorable")
    if any(c is None for c in colors):
        raise DiagramError("coloring did not reach every face; diagram disconnected?")
    return Coloring(tuple(colors))  # type: ignore[arg-type]


def edge_alternation(diagram: PlanarDiagram) -> dict[int, bool]:
    """True for alternating edges: one end an underpass, the other an overpass.

    Equivalently, the two slot occurrences have different slot parity.
    """
    out = {}
    for lab, (d1, d2) in diagram.edge_darts.items():
        out[lab] = (slot_of(d1) & 1) != (slot_of(d2) & 1)
    return out


def non_alternating_edges(diagram: PlanarDiagram) -> tuple[int, ...]:
    alt = edge_alternation(diagram)
    return tuple(sorted(lab for lab, is_alt in alt.items() if not is_alt))


def is_alternating(diagram: PlanarDiagram) -> bool:
    return not non_alternating_edges(diagram)


def crossing_signs(diagram: PlanarDiagram, coloring: Coloring | None = None) -> dict[int, int]:
    """Sign of each crossing relative to the checkerboard coloring.

    A crossing is +1 exactly when its two corners at slots (0,1) and (2,3)
    lie in black faces. Swapping the coloring anchor negates every sign.
    """
    coloring = coloring or checkerboard(diagram)
    out = {}
    for c in range(diagram.n):
        f0 = diagram.face_at_corner(c, 0)
        f2 = diagram.face_at_corner(c, 2)
        if coloring.color(f0) != coloring.color(f2):
            raise DiagramError(f"opposite corners of crossing {c} disagree in color")
        out[c] = 1 if coloring.color(f0) == BLACK else -1
    return out


def mirror(diagram: PlanarDiagram) -> PlanarDiagram:
    """Exchange over and under strands everywhere; same projection."""
    rows = [(b, c, d, a) for (a, b, c, d) in diagram.crossings]
    return PlanarDiagram.from_rows(rows, allow_disconnected=not diagram.is_connected)


def switch_crossing(diagram: PlanarDiagram, c: int) -> PlanarDiagram:
    """Exchange over and under strands at one crossing only."""
    rows = list(diagram.crossings)
    a, b, cc, d = rows[c]
    rows[c] = (b, cc, d, a)
    return PlanarDiagram.from_rows(rows, allow_disconnected=not diagram.is_connected)


def composite_circles(diagram: PlanarDiagram) -> tuple[CompositeCircle, ...]:
    """All composite circles, one per qualifying unordered edge pair.

    A pair of distinct edges lying together on two common faces determines
    a simple loop crossing exactly those edges; it is composite when the
    crossings split into two non-empty sides, i.e. the pair is a 2-edge
    cut. The degenerate single-edge case (a face on both sides of one
    edge) is searched too, but a 4-valent graph has no bridges, so it
    cannot separate.
    """
    if not diagram.is_connected:
        raise DiagramError("composite circles are defined for connected diagrams")
    shared: dict[tuple[int, int], list[int]] = {}
    for lab, (d1, d2) in diagram.edge_darts.items():
        f1, f2 = diagram.face_of_dart[d1], diagram.face_of_dart[d2]
        if f1 == f2:
            # Bridge edge; cutting it twice never separates the crossings.
            continue
        shared.setdefault((min(f1, f2), max(f1, f2)), []).append(lab)
    out = []
    for (f1, f2), labs in sorted(shared.items()):
        if len(labs) < 2:
            continue
        labs.sort()
        for i in range(len(labs)):
            for j in range(i + 1, len(labs)):
                sides = _cut_sides(diagram, labs[i], labs[j])
                if sides is not None:
                    out.append(CompositeCircle((labs[i], labs[j]), (f1, f2), sides))
    out.sort(key=lambda cc: cc.edges)
    return tuple(out)


def _cut_sides(
    diagram: PlanarDiagram, e1: int, e2: int
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Crossing partition from deleting edges e1, e2, or None if connected."""
    parent = list(range(diagram.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for lab, (d1, d2) in diagram.edge_darts.items():
        if lab in (e1, e2):
            continue
        a, b = find(d1 >> 2), find(d2 >> 2)
        if a != b:
            parent[a] = b
    groups: dict[int, list[int]] = {}
    for c in range(diagram.n):
        groups.setdefault(find(c), []).append(c)
    if len(groups) != 2:
        return None
    side1, side2 = sorted(groups.values())
    return tuple(side1), tuple(side2)


def is_prime(diagram: PlanarDiagram) -> bool:
    return not composite_circles(diagram)


# -- canonical form --------------------------------------------------------


def canonical_rows(
    labels: Sequence[int], alpha: Sequence[int], n: int, *, keep_parity: bool = True
) -> tuple[tuple[int, int, int, int], ...]:
    """Canonical PD rows from flat per-dart labels and the edge involution.

    An isomorphism relabels crossings, rotates each crossing's slots by an
    even amount (preserving over/under), and relabels edges. The encoding
    from a root dart assigns new crossing ids in BFS order; the arrival
    dart at each crossing becomes slot 0 or 1 according to its parity, and
    edges are numbered from 1 by first appearance. The minimum over all
    root darts is canonical. With ``keep_parity`` off, arrival darts
    become slot 0 outright, canonicalizing the underlying projection.
    """
    best: tuple[int, ...] | None = None
    # With parity kept, an odd root encodes identically to the even dart
    # before it, so even roots suffice.
    step = 2 if keep_parity else 1
    for root in range(0, 4 * n, step):
        enc = _encode_from(labels, alpha, n, root, keep_parity, best)
        if enc is not None:
            best = enc
    assert best is not None
    return tuple(tuple(best[4 * c : 4 * c + 4]) for c in range(n))


def _encode_from(labels, alpha, n: int, root: int, keep_parity: bool, best) -> tuple | None:
    """Flat encoding from one root, or None once it exceeds ``best``."""
    new_id = [-1] * n
    offset = [0] * n  # old slot of the dart that became new slot 0
    order: list[int] = []

    def visit(d: int) -> None:
        c = d >> 2
        new_id[c] = len(order)
        order.append(c)
        s = d & 3
        offset[c] = (s - (s & 1)) & 3 if keep_parity else s

    visit(root)
    edge_ids: dict[int, int] = {}
    flat: list[int] = []
    still_equal = best is not None
    k = 0
    while k < len(order):
        c = order[k]
        k += 1
        base = 4 * c
        off = offset[c]
        for new_slot in range(4):
            d = base + ((off + new_slot) & 3)
            lab = labels[d]
            known = edge_ids.get(lab)
            if known is None:
                known = edge_ids[lab] = len(edge_ids) + 1
                other = alpha[d]
                if new_id[other >> 2] == -1:
                    visit(other)
            if still_equal:
                ref = best[len(flat)]
                if known > ref:
                    return None
                if known < ref:
                    still_equal = False
            flat.append(known)
    if len(order) != n:
        raise DiagramError("canonical encoding requires a connected diagram")
    if still_equal:
        return None  # equal to best
    return tuple(flat)


def _flat_labels(diagram: PlanarDiagram) -> list[int]:
    return [lab for row in diagram.crossings for lab in row]


def canonical_encoding(diagram: PlanarDiagram) -> tuple[tuple[int, int, int, int], ...]:
    """Canonical PD rows, minimal over all rotation-system isomorphisms."""
    return canonical_rows(_flat_labels(diagram), diagram.alpha, diagram.n)


def shadow_encoding(diagram: PlanarDiagram) -> tuple[tuple[int, int, int, int], ...]:
    """Canonical rows of the underlying projection, ignoring over/under."""
    return canonical_rows(_flat_labels(diagram), diagram.alpha, diagram.n, keep_parity=False)


def canonical_code(diagram: PlanarDiagram) -> str:
    return " ".join("X[%d,%d,%d,%d]" % row for row in canonical_encoding(diagram))


def canonical_form(diagram: PlanarDiagram) -> PlanarDiagram:
    return PlanarDiagram.from_rows(canonical_encoding(diagram))


def isomorphic(d1: PlanarDiagram, d2: PlanarDiagram) -> bool:
    return canonical_encoding(d1) == canonical_encoding(d2)


def relabel(
    diagram: PlanarDiagram,
    crossing_perm: Sequence[int],
    rotations: Sequence[int],
    edge_map: dict[int, int] | None = None,
) -> PlanarDiagram:
    """Apply an explicit isomorphism; rotations must be even per crossing."""
    if any(r % 2 for r in rotations):
        raise DiagramError("slot rotations must be even to preserve over/under")
    rows: list[tuple[int, int, int, int] | None] = [None] * diagram.n
    for c, row in enumerate(diagram.crossings):
        r = rotations[c] % 4
        rotated = tuple(row[(s + r) % 4] for s in range(4))
        if edge_map:
            rotated = tuple(edge_map[x] for x in rotated)
        rows[crossing_perm[c]] = rotated  # type: ignore[assignment]
    return PlanarDiagram.from_rows(rows)  # type: ignore[arg-type]
