# -*- coding: utf-8 -*-
"""DOT and SVG emitters for the embedded decomposition graph.

Tangles are drawn as green discs annotated with valence and sign, channel
edges as arcs between them. With ``collapse_ribbons`` the contracted
junction structure is drawn instead: ribbon edges carry their length and
parity. Output is deterministic.
"""

from __future__ import annotations

import math

from .tangles import TangleDecomposition, contract_ribbons


def _sign_char(sign: int) -> str:
    return "+" if sign > 0 else "-"


def _node_labels(dec: TangleDecomposition) -> dict[int, str]:
    return {
        t.id: f"T{t.id} v={t.valence} {_sign_char(t.sign)}" + ("" if t.simply_connected else " (annular)")
        for t in dec.tangles
    }


def decomposition_dot(dec: TangleDecomposition, *, collapse_ribbons: bool = False) -> str:
    lines = ["graph decomposition {", "  node [shape=circle style=filled fillcolor=palegreen];"]
    labels = _node_labels(dec)
    if not collapse_ribbons or dec.alternating:
        for tid in sorted(labels):
            lines.append(f'  t{tid} [label="{labels[tid]}"];')
        for ce in dec.channel_edges:
            a, b = ce.tangles
            lines.append(f'  t{a} -- t{b} [label="e{ce.label}"];')
    else:
        desc = contract_ribbons(dec)
        if desc.all_two_cycle:
            lines.append(f'  cycle [label="cycle of {len(dec.tangles)} 2-tangles"];')
            lines.append("  cycle -- cycle;")
        else:
            junction_ids = sorted({end[0] for r in desc.ribbons for end in r.ends})
            singles = {lab for lab in desc.singles}
            for ce in dec.channel_edges:
                if ce.label in singles:
                    junction_ids.extend(ce.tangles)
            for tid in sorted(set(junction_ids)):
                lines.append(f'  t{tid} [label="{labels[tid]}"];')
            for r in desc.ribbons:
                (ta, _), (tb, _) = r.ends
                lines.append(
                    f'  t{ta} -- t{tb} [label="ribbon len={r.length} parity={r.parity}" penwidth=3];'
                )
            for lab in desc.singles:
                ce = dec.channel_by_label[lab]
                a, b = ce.tangles
                lines.append(f'  t{a} -- t{b} [label="e{lab}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def decomposition_svg(dec: TangleDecomposition, *, collapse_ribbons: bool = False, size: int = 480) -> str:
    """Circle-layout SVG drawing of the decomposition graph."""
    labels = _node_labels(dec)
    nodes = sorted(labels)
    edges: list[tuple[int, int, str]] = []
    if not collapse_ribbons or dec.alternating:
        for ce in dec.channel_edges:
            edges.append((ce.tangles[0], ce.tangles[1], f"e{ce.label}"))
    else:
        desc = contract_ribbons(dec)
        if desc.all_two_cycle:
            edges = [(nodes[0], nodes[0], f"cycle of {len(nodes)}")]
        else:
            keep = set()
            for r in desc.ribbons:
                keep.update((r.ends[0][0], r.ends[1][0]))
                edges.append((r.ends[0][0], r.ends[1][0], f"ribbon p{r.parity}"))
            for lab in desc.singles:
                ce = dec.channel_by_label[lab]
                keep.update(ce.tangles)
                edges.append((ce.tangles[0], ce.tangles[1], f"e{lab}"))
            nodes = sorted(keep)
    radius = size * 0.38
    cx = cy = size / 2
    pos = {}
    for k, tid in enumerate(nodes):
        angle = 2 * math.pi * k / max(len(nodes), 1)
        pos[tid] = (cx + radius * math.cos(angle), cy + radius * math.sin(angle))
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">'
    ]
    multi: dict[tuple[int, int], int] = {}
    for a, b, label in edges:
        key = (min(a, b), max(a, b))
        bend = multi.get(key, 0)
        multi[key] = bend + 1
        x1, y1 = pos[a]
        x2, y2 = pos[b]
        if a == b:
            parts.append(
                f'<circle cx="{x1 + 28:.1f}" cy="{y1:.1f}" r="24" fill="none" stroke="black"/>'
            )
            continue
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        nx, ny = (y2 - y1), -(x2 - x1)
        norm = math.hypot(nx, ny) or 1.0
        off = (bend - 0) * 14.0
        qx, qy = mx + nx / norm * off, my + ny / norm * off
        parts.append(
            f'<path d="M {x1:.1f} {y1:.1f} Q {qx:.1f} {qy:.1f} {x2:.1f} {y2:.1f}" '
            f'fill="none" stroke="black"/>'
        )
        parts.append(f'<text x="{qx:.1f}" y="{qy - 4:.1f}" font-size="10">{label}</text>')
    for tid in nodes:
        x, y = pos[tid]
        parts.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="26" fill="#8f8" stroke="green"/>')
        parts.append(
            f'<text x="{x:.1f}" y="{y + 4:.1f}" font-size="11" text-anchor="middle">{labels.get(tid, tid)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
