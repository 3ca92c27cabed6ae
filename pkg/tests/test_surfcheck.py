import pytest

from turaev import fixtures
from turaev.pdcore import DiagramError, Refused, parse_pd
from turaev.states import build_turaev_complex
from turaev.surfcheck import (
    SurfaceDiagram,
    from_turaev_complex,
    hayashi_complexity,
    homology_rank_check,
    is_reduced,
    parse_surface,
    surface_genus,
    two_intersection_loops,
)

TREFOIL = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
PSEUDOTREF = parse_pd("X[5,1,4,2] X[3,6,4,1] X[5,2,6,3]")
CLASP2 = parse_pd("X[1,2,3,4] X[3,2,1,4]")


class TestSurfaceGenus:
    def test_planar_lift_zero(self):
        assert surface_genus(SurfaceDiagram.from_planar(TREFOIL)) == 0

    def test_clasp2_complex_torus(self):
        s = from_turaev_complex(build_turaev_complex(CLASP2))
        assert surface_genus(s) == 1

    def test_torusgrid(self):
        tg = fixtures.torusgrid()
        assert tg.n == 16
        assert surface_genus(tg) == 1
        assert tg.is_alternating()
        assert is_reduced(tg)

    def test_header_parsing(self):
        s = parse_surface("genus-free: true\nX[1,1,2,2]")
        assert s.genus == 0
        with pytest.raises(DiagramError):
            parse_surface("genus-free: false\nX[1,1,2,2]")


class TestHomology:
    def test_rank_is_twice_genus(self):
        for s in (
            fixtures.torusgrid(),
            from_turaev_complex(build_turaev_complex(CLASP2)),
            from_turaev_complex(build_turaev_complex(fixtures.gen2a())),
        ):
            assert homology_rank_check(s) == 2 * s.genus


class TestTwoIntersectionLoops:
    def test_torusgrid_obstructed(self):
        tg = fixtures.torusgrid()
        # No two faces of the staggered grid share more than one edge.
        shared = {}
        for lab, (d1, d2) in tg.edge_darts.items():
            key = tuple(sorted((tg.face_of_dart[d1], tg.face_of_dart[d2])))
            shared[key] = shared.get(key, 0) + 1
        assert all(v <= 1 for v in shared.values())
        report = two_intersection_loops(tg)
        assert report.verdict == "obstructed"
        assert report.minimum_intersections is None

    def test_pseudotref_complex_has_loop(self):
        s = from_turaev_complex(build_turaev_complex(PSEUDOTREF))
        report = two_intersection_loops(s)
        assert report.verdict == "loop-found"
        assert report.minimum_intersections == 2

    def test_planar_not_applicable(self):
        report = two_intersection_loops(SurfaceDiagram.from_planar(TREFOIL))
        assert report.verdict == "not-applicable"

    def test_non_alternating_refused(self):
        s = SurfaceDiagram.from_planar(PSEUDOTREF)
        with pytest.raises(Refused):
            two_intersection_loops(s)

    def test_loops_cross_edges_only(self):
        s = from_turaev_complex(build_turaev_complex(CLASP2))
        report = two_intersection_loops(s)
        for loop in report.loops:
            assert loop.intersections == len(loop.edges)
            assert all(lab in s.edge_labels for lab in loop.edges)


class TestHayashi:
    def test_turaev_complexes_have_complexity_two(self):
        for d in (CLASP2, PSEUDOTREF, fixtures.cycle4(), fixtures.gen2a()):
            s = from_turaev_complex(build_turaev_complex(d))
            result = hayashi_complexity(s)
            assert result.value == 2
            assert result.certified

    def test_torusgrid_at_least_three(self):
        result = hayashi_complexity(fixtures.torusgrid())
        assert result.value is not None and result.value >= 3
        assert not result.certified  # upper-bound marker

    def test_genus_zero_refused(self):
        with pytest.raises(Refused):
            hayashi_complexity(SurfaceDiagram.from_planar(TREFOIL))

    def test_max_len_limits_search(self):
        result = hayashi_complexity(fixtures.torusgrid(), max_len=2)
        assert result.value is None
        assert not result.certified


class TestFromComplex:
    def test_alternating_on_surface(self):
        for d in (PSEUDOTREF, CLASP2, fixtures.gen2a(), fixtures.gen2b()):
            s = from_turaev_complex(build_turaev_complex(d))
            assert s.is_alternating()
            assert s.genus == build_turaev_complex(d).genus

    def test_preserves_edge_labels(self):
        s = from_turaev_complex(build_turaev_complex(CLASP2))
        assert sorted(s.edge_labels) == sorted(CLASP2.edge_labels)
