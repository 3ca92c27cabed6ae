# -*- coding: utf-8 -*-
"""Alternating tangle decomposition and the low-genus classifiers.

The maximally connected alternating tangles of a diagram are the
components of the crossing set under adjacency along alternating edges;
the non-alternating edges are the channel edges between them. The boundary
of each tangle region is traced combinatorially: a channel edge carries
one marked point near each endpoint, and inside every face the marked
points of consecutive non-alternating incidences along the boundary walk
are joined by an arc. Following those arcs yields the boundary circles of
the tangle regions, and with them the cyclic order of each tangle's legs,
the embedded decomposition graph, and whether a tangle region is a disc.

Within a tangle all crossings have the same checkerboard sign. A slot
parity count shows an alternating edge always joins crossings of equal
sign and a channel edge crossings of opposite sign, so adjacent tangles
alternate in sign and no channel edge returns to its own tangle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations

from .pdcore import (
    DiagramError,
    PlanarDiagram,
    Refused,
    checkerboard,
    composite_circles,
    crossing_signs,
    edge_alternation,
)
from .states import turaev_genus
from . import surgery


@dataclass(frozen=True)
class Tangle:
    """A maximally connected alternating tangle.

    ``boundary_circles`` lists the legs (non-alternating darts based at
    this tangle's crossings) in cyclic order along each boundary circle of
    the tangle region; the tangle is simply connected exactly when there
    is one circle.
    """

    id: int
    crossings: tuple[int, ...]
    sign: int
    boundary_circles: tuple[tuple[int, ...], ...]

    @property
    def legs(self) -> tuple[int, ...]:
        return tuple(sorted(d for circle in self.boundary_circles for d in circle))

    @property
    def boundary(self) -> tuple[int, ...]:
        """Primary boundary circle (the whole boundary when a disc)."""
        return self.boundary_circles[0] if self.boundary_circles else ()

    @property
    def valence(self) -> int:
        return len(self.legs) // 2

    @property
    def simply_connected(self) -> bool:
        return len(self.boundary_circles) <= 1

    @property
    def size(self) -> int:
        return len(self.crossings)


@dataclass(frozen=True)
class ChannelEdge:
    label: int
    darts: tuple[int, int]
    tangles: tuple[int, int]


@dataclass(frozen=True)
class TangleDecomposition:
    diagram: PlanarDiagram
    alternating: bool
    tangles: tuple[Tangle, ...]
    channel_edges: tuple[ChannelEdge, ...]
    channel_faces: tuple[int, ...]

    @cached_property
    def tangle_of_crossing(self) -> dict[int, int]:
        return {c: t.id for t in self.tangles for c in t.crossings}

    @cached_property
    def channel_by_label(self) -> dict[int, ChannelEdge]:
        return {ce.label: ce for ce in self.channel_edges}

    def far_tangle(self, tangle_id: int, label: int) -> int:
        a, b = self.channel_by_label[label].tangles
        return b if a == tangle_id else a

    def neighbors(self, tangle_id: int) -> dict[int, list[int]]:
        """Adjacent tangle id -> connecting channel edge labels."""
        out: dict[int, list[int]] = {}
        for ce in self.channel_edges:
            a, b = ce.tangles
            if a == tangle_id:
                out.setdefault(b, []).append(ce.label)
            if b == tangle_id:
                out.setdefault(a, []).append(ce.label)
        return out


def decompose(diagram: PlanarDiagram) -> TangleDecomposition:
    """Split a connected diagram into its alternating tangle structure."""
    if not diagram.is_connected:
        raise DiagramError("tangle decomposition requires a connected diagram")
    alt = edge_alternation(diagram)
    parent = list(range(diagram.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for lab, (d1, d2) in diagram.edge_darts.items():
        if alt[lab]:
            a, b = find(d1 >> 2), find(d2 >> 2)
            if a != b:
                parent[a] = b
    groups: dict[int, list[int]] = {}
    for c in range(diagram.n):
        groups.setdefault(find(c), []).append(c)
    crossing_sets = sorted(tuple(sorted(g)) for g in groups.values())
    signs = crossing_signs(diagram)
    tangle_of_crossing = {}
    for tid, crossings in enumerate(crossing_sets):
        if len({signs[c] for c in crossings}) != 1:
            raise DiagramError(f"tangle {crossings} mixes crossing signs")
        for c in crossings:
            tangle_of_crossing[c] = tid

    if all(alt.values()):
        whole = Tangle(0, crossing_sets[0], signs[0], ())
        return TangleDecomposition(diagram, True, (whole,), (), ())

    circles = _boundary_circles(diagram, alt)
    per_tangle: dict[int, list[tuple[int, ...]]] = {tid: [] for tid in range(len(crossing_sets))}
    for circle in circles:
        owners = {tangle_of_crossing[d >> 2] for d in circle}
        if len(owners) != 1:
            raise DiagramError("boundary circle spans several tangles")
        per_tangle[owners.pop()].append(circle)
    tangles = tuple(
        Tangle(tid, crossings, signs[crossings[0]], tuple(sorted(per_tangle[tid])))
        for tid, crossings in enumerate(crossing_sets)
    )
    channel = []
    for lab in sorted(l for l, a in alt.items() if not a):
        d1, d2 = diagram.edge_darts[lab]
        t1, t2 = tangle_of_crossing[d1 >> 2], tangle_of_crossing[d2 >> 2]
        channel.append(ChannelEdge(lab, (d1, d2), (t1, t2)))
    channel_faces = tuple(
        sorted(f.id for f in diagram.faces if any(not alt[diagram.label(d)] for d in f.darts))
    )
    return TangleDecomposition(diagram, False, tangles, tuple(channel), channel_faces)


def _boundary_circles(diagram: PlanarDiagram, alt: dict[int, bool]) -> list[tuple[int, ...]]:
    """Orbits of the tangle-boundary successor on non-alternating darts.

    A non-alternating dart stands for the marked point near its tail. The
    successor crosses to the far side of the edge and follows the arc in
    that face to the next non-alternating incidence.
    """
    alpha = diagram.alpha
    next_non_alt: dict[int, int] = {}
    for face in diagram.faces:
        idxs = [i for i, d in enumerate(face.darts) if not alt[diagram.label(d)]]
        if len(idxs) % 2:
            raise DiagramError(f"face {face.id} has an odd number of non-alternating incidences")
        for k, i in enumerate(idxs):
            j = idxs[(k + 1) % len(idxs)]
            next_non_alt[face.darts[i]] = face.darts[j]
    succ = {}
    for d in next_non_alt:
        succ[alpha[d]] = next_non_alt[d]
    seen = set()
    circles = []
    for start in sorted(succ):
        if start in seen:
            continue
        circle = []
        d = start
        while d not in seen:
            seen.add(d)
            circle.append(d)
            d = succ[d]
        k = circle.index(min(circle))
        circles.append(tuple(circle[k:] + circle[:k]))
    return circles


# -- genus-one classification ------------------------------------------------


@dataclass(frozen=True)
class CycleStructure:
    """A cycle of alternating 2-tangles.

    ``order`` lists tangle ids around the cycle; ``junctions[i]`` holds the
    two channel edge labels joining ``order[i]`` to ``order[i+1]``. The
    two-tangle cycle (four parallel channel edges) is the degenerate case
    ``n == 2``.
    """

    decomposition: TangleDecomposition
    order: tuple[int, ...]
    junctions: tuple[tuple[int, int], ...]
    white_faces: tuple[int, int]

    @property
    def n(self) -> int:
        return len(self.order)

    @property
    def tangles(self) -> tuple[Tangle, ...]:
        return tuple(self.decomposition.tangles[t] for t in self.order)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(t.size for t in self.tangles)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(t.sign for t in self.tangles)


def _adjacent_in_circle(circle: tuple[int, ...], pair: set[int]) -> bool:
    k = len(circle)
    return any({circle[i], circle[(i + 1) % k]} == pair for i in range(k))


def classify_genus_one(diagram: PlanarDiagram) -> CycleStructure:
    """Recognize a cycle of alternating 2-tangles; Refused with a reason
    otherwise. Succeeds exactly on the prime connected diagrams of Turaev
    genus one."""
    if not diagram.is_connected:
        raise DiagramError("classification requires a connected diagram")
    if composite_circles(diagram):
        raise Refused("composite diagram")
    dec = decompose(diagram)
    if dec.alternating:
        raise Refused("alternating diagram")
    for t in dec.tangles:
        if t.valence != 2:
            raise Refused(f"tangle {t.id} has valence {t.valence}, not 2")
        if not t.simply_connected:
            raise Refused(f"tangle {t.id} is not simply connected")
    n = len(dec.tangles)
    if n == 1:
        raise Refused("channel edges return to a single tangle")

    junction_list = _junction_pairing(dec)
    if junction_list is None:
        raise Refused("channel edges are not rotation-adjacent junction pairs")

    junction_map: dict[int, list[tuple[int, int, int]]] = {t.id: [] for t in dec.tangles}
    for t1, t2, labs in junction_list:
        junction_map[t1].append((t2, labs[0], labs[1]))
        junction_map[t2].append((t1, labs[0], labs[1]))
    for tid, js in junction_map.items():
        if len(js) != 2:
            raise Refused(f"tangle {tid} does not meet exactly two junctions")
    start = 0
    order = [start]
    junctions: list[tuple[int, int]] = []
    nxt, e1, e2 = sorted(junction_map[start])[0]
    junctions.append((e1, e2))
    prev_edges = {e1, e2}
    while nxt != start:
        order.append(nxt)
        onward = [j for j in junction_map[nxt] if {j[1], j[2]} != prev_edges]
        if len(onward) != 1:
            raise Refused("junction pattern is not a single cycle")
        nxt, e1, e2 = onward[0]
        junctions.append((e1, e2))
        prev_edges = {e1, e2}
    if len(order) != n:
        raise Refused("junction pattern is not a single cycle covering every tangle")

    coloring = checkerboard(diagram)
    white = _two_face_color_signature(dec, coloring)
    if white is None:
        raise Refused("non-alternating edges are not carried by two faces of one color")
    return CycleStructure(dec, tuple(order), tuple(junctions), white)


def _junction_pairing(dec: TangleDecomposition) -> list[tuple[int, int, tuple[int, int]]] | None:
    """Group channel edges into rotation-adjacent pairs per tangle pair.

    Returns a list of junctions (t1, t2, (label, label)); the two-tangle
    cycle contributes two junctions between the same tangles. None when no
    grouping consistent with the rotations exists.
    """
    diagram = dec.diagram
    by_pair: dict[tuple[int, int], list[int]] = {}
    for ce in dec.channel_edges:
        a, b = sorted(ce.tangles)
        if a == b:
            return None
        by_pair.setdefault((a, b), []).append(ce.label)
    junctions: list[tuple[int, int, tuple[int, int]]] = []
    for key, labs in sorted(by_pair.items()):
        if len(labs) == 2:
            for tid in key:
                circle = dec.tangles[tid].boundary
                legs = {d for d in circle if diagram.label(d) in labs}
                if not _adjacent_in_circle(circle, legs):
                    return None
            junctions.append((*key, (min(labs), max(labs))))
        elif len(labs) == 4 and len(by_pair) == 1:
            t1, t2 = key
            c1 = dec.tangles[t1].boundary
            c2 = dec.tangles[t2].boundary
            lab1 = [diagram.label(d) for d in c1]
            for shift in (0, 1):
                ja = {lab1[shift], lab1[(shift + 1) % 4]}
                jb = {lab1[(shift + 2) % 4], lab1[(shift + 3) % 4]}
                if _adjacent_in_circle(c2, {d for d in c2 if diagram.label(d) in ja}) and _adjacent_in_circle(
                    c2, {d for d in c2 if diagram.label(d) in jb}
                ):
                    junctions.append((t1, t2, tuple(sorted(ja))))  # type: ignore[arg-type]
                    junctions.append((t1, t2, tuple(sorted(jb))))  # type: ignore[arg-type]
                    break
            else:
                return None
        else:
            return None
    return junctions


def _two_face_color_signature(dec: TangleDecomposition, coloring) -> tuple[int, int] | None:
    """The two same-color faces that carry all non-alternating edges."""
    diagram = dec.diagram
    channel_labels = {ce.label for ce in dec.channel_edges}
    for color in ("white", "black"):
        carriers = set()
        ok = True
        for lab in channel_labels:
            d1, d2 = diagram.edge_darts[lab]
            side = [
                f
                for f in (diagram.face_of_dart[d1], diagram.face_of_dart[d2])
                if coloring.color(f) == color
            ]
            if len(side) != 1:
                ok = False
                break
            carriers.add(side[0])
        if ok and len(carriers) == 2:
            return tuple(sorted(carriers))  # type: ignore[return-value]
    return None


# -- ring construction ---------------------------------------------------------

TYPE_BY_SIGN = {1: "u", -1: "o"}
_COMPASS = {
    "u": {"NW": 0, "SW": 1, "SE": 2, "NE": 3},
    "o": {"NW": 1, "SW": 2, "SE": 3, "NE": 0},
}


@dataclass(frozen=True)
class RingPayload:
    """One tangle of a ring under construction: PD rows with placeholder
    zeros at the four legs, and the leg positions (UL, LL, LR, UR)."""

    rows: tuple[tuple[int, int, int, int], ...]
    legs: tuple[tuple[int, int], tuple[int, int], tuple[int, int], tuple[int, int]]

    @property
    def size(self) -> int:
        return len(self.rows)


def twist_payload(size: int, kind: str, *, vertical: bool = False) -> RingPayload:
    """An alternating twist of ``size`` same-kind crossings as a 2-tangle.

    Kind "u" puts the NW-SE strand under, kind "o" over. A horizontal
    twist chains crossings left to right; a vertical twist stacks them top
    to bottom, exposing its internal edges to the neighboring channel
    faces. Internal edges are labeled 1..2(size-1); legs are zeros.
    """
    compass = _COMPASS[kind]
    rows = [[0, 0, 0, 0] for _ in range(size)]
    label = 0
    for j in range(size - 1):
        if vertical:
            label += 1
            rows[j][compass["SW"]] = label
            rows[j + 1][compass["NW"]] = label
            label += 1
            rows[j][compass["SE"]] = label
            rows[j + 1][compass["NE"]] = label
        else:
            label += 1
            rows[j][compass["NE"]] = label
            rows[j + 1][compass["NW"]] = label
            label += 1
            rows[j][compass["SE"]] = label
            rows[j + 1][compass["SW"]] = label
    if vertical:
        legs = (
            (0, compass["NW"]),
            (size - 1, compass["SW"]),
            (size - 1, compass["SE"]),
            (0, compass["NE"]),
        )
    else:
        legs = (
            (0, compass["NW"]),
            (0, compass["SW"]),
            (size - 1, compass["SE"]),
            (size - 1, compass["NE"]),
        )
    return RingPayload(tuple(tuple(r) for r in rows), legs)


def assemble_ring(payloads: list[RingPayload]) -> tuple[PlanarDiagram, list[tuple[int, int]]]:
    """Close payloads into a ring: UR_i joins UL_{i+1}, LR_i joins LL_{i+1}.

    Returns the diagram and the junction labels [(upper_i, lower_i)];
    junction i sits between payload i and payload i+1 (mod n).
    """
    rows: list[list[int]] = []
    offsets: list[int] = []
    label_base = 0
    for p in payloads:
        offsets.append(len(rows))
        local_max = max((x for row in p.rows for x in row), default=0)
        for row in p.rows:
            rows.append([x + label_base if x else 0 for x in row])
        label_base += local_max
    junctions = []
    n = len(payloads)
    fresh = label_base
    for i in range(n):
        j = (i + 1) % n
        upper, lower = fresh + 1, fresh + 2
        fresh += 2
        ur, lr = payloads[i].legs[3], payloads[i].legs[2]
        ul, ll = payloads[j].legs[0], payloads[j].legs[1]
        rows[offsets[i] + ur[0]][ur[1]] = upper
        rows[offsets[j] + ul[0]][ul[1]] = upper
        rows[offsets[i] + lr[0]][lr[1]] = lower
        rows[offsets[j] + ll[0]][ll[1]] = lower
        junctions.append((upper, lower))
    return PlanarDiagram.from_rows(rows), junctions


def gen_cycle(signs: tuple[int, ...], sizes: tuple[int, ...]) -> PlanarDiagram:
    """Build a cycle of alternating twist 2-tangles with the given signs.

    Signs must alternate cyclically (so their number is even and at least
    two): equal adjacent signs would make the junction edges alternating
    and merge the tangles, and constant signs would give an alternating
    diagram.
    """
    diagram, _ = gen_cycle_info(signs, sizes)
    return diagram


def gen_cycle_info(
    signs: tuple[int, ...], sizes: tuple[int, ...], vertical: tuple[int, ...] = ()
) -> tuple[PlanarDiagram, list[tuple[int, int]]]:
    signs = tuple(signs)
    sizes = tuple(sizes)
    if len(signs) != len(sizes) or len(signs) < 2:
        raise DiagramError("need matching sign and size sequences of length >= 2")
    if any(s not in (1, -1) for s in signs):
        raise DiagramError("signs must be +1 or -1")
    if any(k < 1 for k in sizes):
        raise DiagramError("tangle sizes must be positive")
    if len(set(signs)) == 1:
        raise DiagramError("constant signs would give an alternating diagram")
    n = len(signs)
    if any(signs[i] == signs[(i + 1) % n] for i in range(n)):
        raise DiagramError("adjacent equal signs would merge the tangles; signs must alternate")
    payloads = [
        twist_payload(size, TYPE_BY_SIGN[sign], vertical=i in vertical)
        for i, (sign, size) in enumerate(zip(signs, sizes))
    ]
    diagram, junctions = assemble_ring(payloads)
    if turaev_genus(diagram) != 1:
        raise DiagramError("generated cycle does not have genus one")
    if composite_circles(diagram):
        raise DiagramError("generated cycle is not prime")
    return diagram, junctions


# -- ribbon contraction and the genus-two classifier --------------------------


@dataclass(frozen=True)
class Ribbon:
    """A maximal chain of pair-linked 2-tangles between junction tangles.

    Ends are (junction id, pair of junction legs); ``interior`` lists the
    chain tangles from end 0 to end 1 and is never empty: two channel
    edges joining junctions directly stay single edges in the descriptor.
    """

    id: int
    ends: tuple[tuple[int, tuple[int, int]], tuple[int, tuple[int, int]]]
    interior: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.interior)

    @property
    def parity(self) -> int:
        return len(self.interior) % 2


@dataclass(frozen=True)
class Genus2Descriptor:
    """Embedded structure of the decomposition after ribbon contraction.

    ``junction_words`` lists, per junction tangle and boundary circle, the
    cyclic sequence of leg annotations ("r", ribbon id, end) or ("s",
    single edge id, 0). ``canonical`` encodes the whole structure, ribbon
    parities included, and is invariant under relabeling and mirror; the
    case table keys on it.
    """

    valences: tuple[int, ...]
    non_simply_connected: bool
    all_two_cycle: bool
    junction_words: tuple[tuple[tuple[tuple[str, int, int], ...], ...], ...]
    ribbons: tuple[Ribbon, ...]
    singles: tuple[int, ...]
    canonical: str
    case_label: int | str | None = None

    @property
    def ribbon_parities(self) -> tuple[int, ...]:
        return tuple(r.parity for r in self.ribbons)

    def with_case(self, label: int | str) -> "Genus2Descriptor":
        return Genus2Descriptor(
            self.valences,
            self.non_simply_connected,
            self.all_two_cycle,
            self.junction_words,
            self.ribbons,
            self.singles,
            self.canonical,
            label,
        )

    def to_json_dict(self) -> dict:
        return {
            "valences": list(self.valences),
            "nonSimplyConnected": self.non_simply_connected,
            "allTwoCycle": self.all_two_cycle,
            "ribbonParities": list(self.ribbon_parities),
            "ribbonLengths": [r.length for r in self.ribbons],
            "singleEdges": len(self.singles),
            "canonical": self.canonical,
            "case": self.case_label,
        }


def _pair_split(dec: TangleDecomposition, t: Tangle) -> tuple[tuple[int, int], tuple[int, int]] | None:
    """Split a valence-2 disc tangle's legs into two parallel pairs.

    A valid split groups the cyclic legs into adjacent pairs, each pair
    going to one other tangle with the far legs adjacent there as well.
    """
    if t.valence != 2 or not t.simply_connected or not t.boundary:
        return None
    diagram = dec.diagram
    circle = t.boundary
    for shift in (0, 1):
        pairs = (
            (circle[shift], circle[(shift + 1) % 4]),
            (circle[(shift + 2) % 4], circle[(shift + 3) % 4]),
        )
        if all(_pair_leads_to_one_tangle(dec, t.id, pair) for pair in pairs):
            return pairs
    return None


def _pair_leads_to_one_tangle(dec: TangleDecomposition, tid: int, pair: tuple[int, int]) -> bool:
    diagram = dec.diagram
    labs = {diagram.label(d) for d in pair}
    if len(labs) != 2:
        return False
    far = {dec.far_tangle(tid, lab) for lab in labs}
    if len(far) != 1 or tid in far:
        return False
    far_tid = far.pop()
    far_t = dec.tangles[far_tid]
    for c in far_t.boundary_circles:
        legs = {d for d in c if diagram.label(d) in labs}
        if len(legs) == 2:
            return _adjacent_in_circle(c, legs)
    return False


def contract_ribbons(dec: TangleDecomposition) -> Genus2Descriptor:
    """Collapse maximal chains of pair-linked 2-tangles into ribbons.

    Junction vertices are the tangles that are not chain interiors; when
    every tangle is a chain interior the diagram is one closed ribbon
    cycle. Ribbon lengths are recorded with their parity; the descriptor
    string is canonical under relabeling and reflection.
    """
    if dec.alternating:
        raise Refused("alternating diagram has no channel structure")
    diagram = dec.diagram
    splits: dict[int, tuple[tuple[int, int], tuple[int, int]]] = {}
    for t in dec.tangles:
        sp = _pair_split(dec, t)
        if sp is not None:
            splits[t.id] = sp
    junctions = sorted(t.id for t in dec.tangles if t.id not in splits)
    valences = tuple(sorted(t.valence for t in dec.tangles))
    nsc = any(not t.simply_connected for t in dec.tangles)

    if not junctions:
        canonical = f"cycle[n={len(dec.tangles)},parity={len(dec.tangles) % 2}]"
        return Genus2Descriptor(valences, nsc, True, (), (), (), canonical)

    ribbons: list[Ribbon] = []
    singles: list[int] = []
    consumed: set[int] = set()
    end_annotation: dict[int, tuple[str, int, int]] = {}
    for jid in junctions:
        for circle in dec.tangles[jid].boundary_circles:
            for leg in circle:
                lab = diagram.label(leg)
                if lab in consumed:
                    continue
                partner = _ribbon_start_partner(dec, splits, jid, leg)
                if partner is not None:
                    start_pair = tuple(sorted((leg, partner)))
                    rib = _walk_ribbon(dec, splits, jid, start_pair, consumed, len(ribbons))
                    ribbons.append(rib)
                    for end_index, (tid, legs) in enumerate(rib.ends):
                        for end_leg in legs:
                            end_annotation[end_leg] = ("r", rib.id, end_index)
                else:
                    consumed.add(lab)
                    singles.append(lab)
                    for d in dec.channel_by_label[lab].darts:
                        end_annotation[d] = ("s", lab, 0)

    words = []
    for jid in junctions:
        circles = []
        for circle in dec.tangles[jid].boundary_circles:
            circles.append(tuple(end_annotation[leg] for leg in circle))
        words.append(tuple(circles))
    canonical = _canonical_junction_structure(tuple(words), ribbons, dec, junctions)
    return Genus2Descriptor(
        valences, nsc, False, tuple(words), tuple(ribbons), tuple(sorted(singles)), canonical
    )


def _ribbon_start_partner(dec, splits, jid, leg) -> int | None:
    """The junction leg paired with ``leg`` through a chain tangle.

    When the edge of ``leg`` enters a chain tangle on one of its split
    pairs, the other edge of that split pair returns to the junction and
    its leg is the forced partner; direct junction-to-junction edges have
    no partner and stay single. Chains make ribbons, singles stay single,
    and nothing depends on iteration order.
    """
    diagram = dec.diagram
    lab = diagram.label(leg)
    far_tid = dec.far_tangle(jid, lab)
    if far_tid not in splits:
        return None
    for pair in splits[far_tid]:
        labs = {diagram.label(d) for d in pair}
        if lab in labs:
            other_lab = (labs - {lab}).pop()
            ce = dec.channel_by_label[other_lab]
            for d in ce.darts:
                if dec.tangle_of_crossing[d >> 2] == jid and d != leg:
                    return d
            return None
    return None


def _walk_ribbon(dec, splits, start_jid, start_pair, consumed, rib_id) -> Ribbon:
    diagram = dec.diagram
    labs = {diagram.label(d) for d in start_pair}
    consumed.update(labs)
    interior: list[int] = []
    far = {dec.far_tangle(start_jid, lab) for lab in labs}
    cur = far.pop()
    while cur in splits:
        interior.append(cur)
        enter = frozenset(
            d for c in dec.tangles[cur].boundary_circles for d in c if diagram.label(d) in labs
        )
        (p1a, p1b), (p2a, p2b) = splits[cur]
        if enter == frozenset((p1a, p1b)):
            exit_pair = (p2a, p2b)
        elif enter == frozenset((p2a, p2b)):
            exit_pair = (p1a, p1b)
        else:
            raise DiagramError("chain tangle entered off its pair split")
        labs = {diagram.label(d) for d in exit_pair}
        consumed.update(labs)
        nxt = {dec.far_tangle(cur, lab) for lab in labs}
        if len(nxt) != 1:
            raise DiagramError("chain pair leads to two different tangles")
        cur = nxt.pop()
    end_legs = tuple(
        sorted(
            d
            for c in dec.tangles[cur].boundary_circles
            for d in c
            if diagram.label(d) in labs
        )
    )
    if len(end_legs) != 2:
        raise DiagramError("ribbon end does not land on two junction legs")
    return Ribbon(rib_id, ((start_jid, start_pair), (cur, end_legs)), tuple(interior))


def _canonical_junction_structure(words, ribbons, dec, junctions) -> str:
    """Canonical string of the junction structure.

    Minimizes over junction orderings, per-circle rotations, and a global
    reflection, renaming connections by first appearance. Ribbon parities
    ride along; vertex attributes record valence and disc-ness.
    """
    parity = {r.id: r.parity for r in ribbons}
    attrs = {}
    for jid in junctions:
        t = dec.tangles[jid]
        attrs[jid] = (t.valence, t.simply_connected)

    def encode(order: tuple[int, ...], reflect: bool) -> str:
        # rename: (kind, ident) -> (tag, first end seen); a ribbon's two
        # ends are interchangeable, so the first one encountered is end 0.
        rename: dict[tuple[str, int], tuple[str, int]] = {}
        pieces = []
        for jid in order:
            circle_words = [list(w) for w in words[junctions.index(jid)]]
            if reflect:
                circle_words = [list(reversed(w)) for w in circle_words]
            vertex_pieces = []
            for word in circle_words:
                best_piece = None
                best_state = None
                for rot in range(len(word)):
                    trial = dict(rename)
                    syms = []
                    for kind, ident, end in word[rot:] + word[:rot]:
                        key = (kind, ident)
                        if key not in trial:
                            tag = f"{kind}{sum(1 for k in trial if k[0] == kind)}"
                            trial[key] = (tag, end)
                        tag, first_end = trial[key]
                        if kind == "r":
                            syms.append(f"{tag}.{0 if end == first_end else 1}p{parity[ident]}")
                        else:
                            syms.append(tag)
                    piece = ",".join(syms)
                    if best_piece is None or piece < best_piece:
                        best_piece, best_state = piece, trial
                rename = best_state  # type: ignore[assignment]
                vertex_pieces.append(best_piece)
            v, sc = attrs[jid]
            pieces.append(f"[v{v}{'d' if sc else 'a'}:{'|'.join(sorted(vertex_pieces))}]")
        return "".join(pieces)

    best = None
    for order in permutations(junctions):
        for reflect in (False, True):
            enc = encode(order, reflect)
            if best is None or enc < best:
                best = enc
    assert best is not None
    return best


def classify_genus_two(diagram: PlanarDiagram) -> Genus2Descriptor:
    """Assign one of the eight genus-two structure labels.

    Refuses diagrams that are not prime, connected, genus two. A structure
    outside the case table comes back labeled "unmatched" with its raw
    descriptor rather than raising.
    """
    if not diagram.is_connected:
        raise DiagramError("classification requires a connected diagram")
    if composite_circles(diagram):
        raise Refused("composite diagram")
    g = turaev_genus(diagram)
    if g != 2:
        raise Refused(f"Turaev genus is {g}, not 2")
    dec = decompose(diagram)
    descriptor = contract_ribbons(dec)
    from .casetable import lookup_case

    return descriptor.with_case(lookup_case(descriptor, dec))


# -- genus-two generator -------------------------------------------------------


@dataclass(frozen=True)
class Genus2Recipe:
    """Build recipe: a genus-one cycle base, alternating pieces joined to
    chosen base edges, and one final splice that reverses a cutting arc
    and raises the genus to two.

    Pieces are closed alternating twists, given as (size, sign, base edge
    selector). Edge selectors: ``("junction", i, k)`` is the upper (k = 0)
    or lower (k = 1) edge of base junction i; ``("internal", t, k)`` the
    k-th internal edge of base tangle t; ``("piece", p, k)`` the k-th
    closure edge (k in 0, 1) of piece p. The splice selects two edges of
    the joined diagram that must share a face.
    """

    base_signs: tuple[int, ...]
    base_sizes: tuple[int, ...]
    pieces: tuple[tuple[int, int, tuple[str, int, int]], ...]
    splice: tuple[tuple[str, int, int], tuple[str, int, int]]
    base_vertical: tuple[int, ...] = ()

    @staticmethod
    def one_piece(
        base_signs, base_sizes, piece_size, piece_sign, attach1, attach2, base_vertical=()
    ) -> "Genus2Recipe":
        """A single piece joined at ``attach1``; the splice runs from the
        piece's free closure edge to ``attach2``."""
        return Genus2Recipe(
            tuple(base_signs),
            tuple(base_sizes),
            ((piece_size, piece_sign, attach1),),
            (("piece", 0, 1), attach2),
            tuple(base_vertical),
        )

    @staticmethod
    def across_junctions(
        base_signs, base_sizes, piece_size, piece_sign, junctions: tuple[int, int]
    ) -> "Genus2Recipe":
        j1, j2 = junctions
        return Genus2Recipe.one_piece(
            base_signs, base_sizes, piece_size, piece_sign,
            ("junction", j1, 0), ("junction", j2, 0),
        )


def _closed_twist(size: int, sign: int) -> PlanarDiagram:
    """The alternating closure of a twist: two parallel strands closed up."""
    payload = twist_payload(size, TYPE_BY_SIGN[sign])
    rows = [list(r) for r in payload.rows]
    base = max((x for row in rows for x in row), default=0)
    top, bottom = base + 1, base + 2
    (ul, ll, lr, ur) = payload.legs
    rows[ur[0]][ur[1]] = top
    rows[ul[0]][ul[1]] = top
    rows[lr[0]][lr[1]] = bottom
    rows[ll[0]][ll[1]] = bottom
    return PlanarDiagram.from_rows(rows)


def _resolve_selector(selector, junctions, base, piece_edges) -> int:
    kind, a, b = selector
    if kind == "junction":
        if not (0 <= a < len(junctions)) or b not in (0, 1):
            raise DiagramError(f"bad junction selector {selector}")
        return junctions[a][b]
    if kind == "internal":
        dec = decompose(base)
        if not (0 <= a < len(dec.tangles)):
            raise DiagramError(f"bad tangle selector {selector}")
        alt = edge_alternation(base)
        tangle = dec.tangles[a]
        internal = sorted(
            lab
            for lab in base.edge_labels
            if alt[lab]
            and all((d >> 2) in tangle.crossings for d in base.edge_darts[lab])
        )
        if not (0 <= b < len(internal)):
            raise DiagramError(f"tangle {a} has no internal edge {b}")
        return internal[b]
    if kind == "piece":
        if not (0 <= a < len(piece_edges)) or b not in (0, 1):
            raise DiagramError(f"bad piece selector {selector}")
        lab = piece_edges[a][b]
        if lab is None:
            raise DiagramError(f"closure edge {b} of piece {a} was consumed by its join")
        return lab
    raise DiagramError(f"unknown selector kind {kind!r}")


def gen_genus2(recipe: Genus2Recipe) -> PlanarDiagram:
    """Run a recipe and return a prime connected genus-two diagram.

    The base is a cycle of alternating 2-tangles. Each piece is joined to
    its base edge (a connected sum, keeping genus one); the final splice
    between two edges sharing a face reverses a cutting arc and raises the
    genus. The postconditions are checked and a recipe that fails them is
    rejected with diagnostics.
    """
    if not recipe.base_signs or not recipe.base_sizes or not recipe.pieces:
        raise DiagramError("empty recipe")
    base, junctions = gen_cycle_info(recipe.base_signs, recipe.base_sizes, recipe.base_vertical)
    current = base
    piece_edges: list[list[int | None]] = []
    for size, sign, join_sel in recipe.pieces:
        piece = _closed_twist(size, sign)
        closure = (max(piece.edge_labels) - 1, max(piece.edge_labels))
        join_edge = _resolve_selector(join_sel, junctions, base, piece_edges)
        if join_edge not in current.edge_labels:
            raise DiagramError(f"join edge {join_edge} was already consumed")
        shift = max(current.edge_labels)
        d_cur = current.edge_darts[join_edge][0]
        d_piece = piece.edge_darts[closure[0]][0]
        current = surgery.connect_sum(current, d_cur, piece, d_piece)
        piece_edges.append([None, closure[1] + shift])
    lab1 = _resolve_selector(recipe.splice[0], junctions, base, piece_edges)
    lab2 = _resolve_selector(recipe.splice[1], junctions, base, piece_edges)
    if lab1 == lab2:
        raise DiagramError("splice selects one edge twice")
    if lab1 not in current.edge_labels or lab2 not in current.edge_labels:
        raise DiagramError("splice edge was consumed by a join")
    target = None
    for face in current.faces:
        labs = [current.label(d) for d in face.darts]
        if lab1 in labs and lab2 in labs:
            target = (face.id, labs.index(lab1), labs.index(lab2))
            break
    if target is None:
        raise DiagramError(f"splice edges {lab1}, {lab2} do not share a face")
    result, _ = surgery.surger_arc(current, *target)
    if not result.is_connected:
        raise DiagramError("recipe produced a disconnected diagram")
    result = PlanarDiagram.from_rows(result.crossings)
    g = turaev_genus(result)
    if g != 2:
        raise DiagramError(f"recipe produced genus {g}, not 2")
    if composite_circles(result):
        raise DiagramError("recipe produced a composite diagram")
    return result
