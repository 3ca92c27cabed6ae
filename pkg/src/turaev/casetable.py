# -*- coding: utf-8 -*-
"""Case labels for genus-two alternating tangle structures.

The eight structures are discriminated by coarse shape first: a
non-simply-connected tangle is case 4; a single valence-4 junction falls
in {1, 3, 6}; two valence-3 junctions fall in {2, 5}; all-valence-2
structures are case 7, or case 8 when some tangle touches four distinct
others. Within {1, 3, 6} and {2, 5} the canonical junction structure
decides, via the versioned pattern table in ``data/genus2_cases.json``:
labels were assigned to the catalogued patterns in a fixed documented
order (first-observed embedding of the single-4-tangle family is 1, the
second 3, the third 6; the all-even theta is 2 and the all-odd theta 5,
chain parities being forced to agree by the sign alternation along a
chain). Ribbon lengths beyond their parity never matter, so several
patterns can share one label. A structure outside the table comes back
unmatched rather than mislabeled.
"""

from __future__ import annotations

import json
from importlib import resources

UNMATCHED = "unmatched"

_TABLE: dict | None = None


def _table() -> dict:
    global _TABLE
    if _TABLE is None:
        with resources.files("turaev.data").joinpath("genus2_cases.json").open(
            "r", encoding="utf-8"
        ) as fh:
            _TABLE = json.load(fh)
    return _TABLE


def lookup_case(descriptor, decomposition) -> int | str:
    if descriptor.non_simply_connected:
        return 4
    valences = descriptor.valences
    if descriptor.all_two_cycle:
        # A pure cycle of 2-tangles has genus one, never two.
        return UNMATCHED
    if valences.count(4) == 1 and set(valences) <= {2, 4}:
        family = "one-valence-4"
    elif valences.count(3) == 2 and set(valences) <= {2, 3}:
        family = "two-valence-3"
    elif set(valences) == {2}:
        return 8 if _touches_four(decomposition) else 7
    else:
        return UNMATCHED
    label = _table()[family].get(descriptor.canonical)
    return label if label is not None else UNMATCHED


def _touches_four(decomposition) -> bool:
    return any(
        len(decomposition.neighbors(t.id)) >= 4 for t in decomposition.tangles
    )
