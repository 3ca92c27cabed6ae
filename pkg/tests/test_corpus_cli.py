import json
from pathlib import Path

import pytest

from turaev import cli, corpus, fixtures, render
from turaev.pdcore import PlanarDiagram, canonical_encoding, parse_pd
from turaev.tangles import decompose

import oracles


class TestEnumeration:
    @pytest.mark.parametrize("n,expected", [(1, 2), (2, 8), (3, 44)])
    def test_matches_bruteforce_matchings(self, n, expected):
        ours = {
            canonical_encoding(d) for d in corpus.exhaustive(n) if d.n == n
        }
        brute = oracles.brute_force_all_diagrams(n)
        assert ours == brute
        assert len(ours) == expected

    def test_canonical_and_sorted(self):
        diagrams = corpus.exhaustive(3)
        rows = [d.crossings for d in diagrams]
        assert all(canonical_encoding(d) == d.crossings for d in diagrams)
        by_n = {}
        for r in rows:
            by_n.setdefault(len(r), []).append(r)
        for group in by_n.values():
            assert group == sorted(group)

    def test_trefoil_projection_in_three_crossing_corpus(self):
        from turaev.pdcore import shadow_encoding

        shadows = {shadow_encoding(d) for d in corpus.exhaustive(3) if d.n == 3}
        assert shadow_encoding(fixtures.trefoil()) in shadows

    def test_random_corpus_deterministic(self):
        a = corpus.random_corpus(5, 40, 8)
        b = corpus.random_corpus(5, 40, 8)
        assert [d.crossings for d in a] == [d.crossings for d in b]
        c = corpus.random_corpus(6, 40, 8)
        assert [d.crossings for d in a] != [d.crossings for d in c]

    def test_random_prime_filter(self):
        from turaev.pdcore import is_prime

        for d in corpus.random_prime_diagrams(1, 10, 8):
            assert is_prime(d)


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def fixture_file(tmp_path):
    def write(name: str, text: str) -> str:
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)

    return write


class TestCliInfo:
    def test_trefoil(self, capsys, fixture_file):
        path = fixture_file("trefoil.pd", fixtures.trefoil().to_pd_text())
        code, out, _ = run_cli(capsys, "info", path)
        assert code == 0
        doc = json.loads(out)
        assert doc["genus"] == 0
        assert doc["adequacy"] == "adequate"
        assert doc["prime"] is True

    def test_pseudotref(self, capsys, fixture_file):
        path = fixture_file("p.pd", fixtures.pseudotref().to_pd_text())
        code, out, _ = run_cli(capsys, "info", path)
        assert json.loads(out)["genus"] == 1
        assert json.loads(out)["adequacy"] == "inadequate-diagram"

    def test_malformed_exit_2(self, capsys, fixture_file):
        path = fixture_file("bad.pd", "X[1,2,3]")
        code, out, _ = run_cli(capsys, "info", path)
        assert code == 2
        assert "error" in json.loads(out)

    def test_text_format(self, capsys, fixture_file):
        path = fixture_file("t.pd", fixtures.trefoil().to_pd_text())
        code, out, _ = run_cli(capsys, "info", path, "--format", "text")
        assert code == 0
        assert "genus: 0" in out

    def test_jobs_preserve_order(self, capsys, fixture_file):
        p1 = fixture_file("a.pd", fixtures.trefoil().to_pd_text())
        p2 = fixture_file("b.pd", fixtures.pseudotref().to_pd_text())
        _, seq, _ = run_cli(capsys, "info", p1, p2)
        _, par, _ = run_cli(capsys, "info", p1, p2, "--jobs", "2")
        strip = lambda s: [json.dumps({k: v for k, v in json.loads(line).items() if k != "file"}, sort_keys=True) for line in s.splitlines()]
        assert strip(seq) == strip(par)


class TestCliClassify:
    def test_pseudotref_cycle(self, capsys, fixture_file):
        path = fixture_file("p.pd", fixtures.pseudotref().to_pd_text())
        code, out, _ = run_cli(capsys, "classify", path)
        doc = json.loads(out)
        assert code == 0
        assert doc["kind"] == "cycle"
        assert doc["tangles"] == 2

    def test_gen2a_case(self, capsys, fixture_file):
        path = fixture_file("g.pd", fixtures.gen2a().to_pd_text())
        code, out, _ = run_cli(capsys, "classify", path)
        doc = json.loads(out)
        assert doc["kind"] == "genus2"
        assert doc["case"] == 1

    def test_connsum_refused(self, capsys, fixture_file):
        path = fixture_file("c.pd", fixtures.connsum().to_pd_text())
        code, out, _ = run_cli(capsys, "classify", path)
        assert code == 0
        assert json.loads(out)["refused"] == "composite"

    def test_trefoil_genus_echo(self, capsys, fixture_file):
        path = fixture_file("t.pd", fixtures.trefoil().to_pd_text())
        _, out, _ = run_cli(capsys, "classify", path)
        assert json.loads(out) == {"file": path, "kind": "other", "genus": 0}

    def test_dot_output(self, capsys, fixture_file):
        path = fixture_file("p.pd", fixtures.pseudotref().to_pd_text())
        code, out, _ = run_cli(capsys, "classify", path, "--format", "dot")
        assert code == 0
        assert out.startswith("graph decomposition {")
        assert "fillcolor=palegreen" in out

    def test_svg_output(self, capsys, fixture_file):
        path = fixture_file("p.pd", fixtures.pseudotref().to_pd_text())
        code, out, _ = run_cli(capsys, "classify", path, "--format", "svg")
        assert code == 0
        assert out.startswith("<svg")


class TestCliReduce:
    def test_gen2a_ladder(self, capsys, fixture_file, tmp_path):
        path = fixture_file("g.pd", fixtures.gen2a().to_pd_text())
        outdir = tmp_path / "ladders"
        code, out, _ = run_cli(capsys, "reduce", path, "--out", str(outdir))
        assert code == 0
        doc = json.loads(out)
        assert doc["cutSteps"] == 2
        assert doc["allTerminalsAlternating"] is True
        written = json.loads((outdir / "g.ladder.json").read_text())
        assert written["cutSteps"] == 2

    def test_trefoil_empty_ladder(self, capsys, fixture_file):
        path = fixture_file("t.pd", fixtures.trefoil().to_pd_text())
        code, out, _ = run_cli(capsys, "reduce", path)
        assert code == 0
        assert json.loads(out)["cutSteps"] == 0

    def test_corrupted_exit_2(self, capsys, fixture_file):
        path = fixture_file("bad.pd", "X[1,1,1,1]")
        code, out, _ = run_cli(capsys, "reduce", path)
        assert code == 2


class TestCliCorpus:
    def test_deterministic_manifest(self, capsys, tmp_path):
        out1 = tmp_path / "c1"
        out2 = tmp_path / "c2"
        for out in (out1, out2):
            code, _, _ = run_cli(
                capsys, "corpus", "--out", str(out), "--max-crossings", "3",
                "--seed", "9", "--random-count", "20", "--verify",
            )
            assert code == 0
        m1 = (out1 / "manifest.jsonl").read_bytes()
        m2 = (out2 / "manifest.jsonl").read_bytes()
        assert m1 == m2

    def test_manifest_contents(self, capsys, tmp_path):
        out = tmp_path / "c"
        run_cli(capsys, "corpus", "--out", str(out), "--max-crossings", "2")
        lines = (out / "manifest.jsonl").read_text().splitlines()
        assert len(lines) == 10  # 2 one-crossing + 8 two-crossing classes
        for line in lines:
            entry = json.loads(line)
            d = parse_pd(entry["pd"])
            assert entry["c"] == d.n
            assert (out / entry["file"]).exists()

    def test_empty_corpus(self, capsys, tmp_path):
        out = tmp_path / "c0"
        code, _, _ = run_cli(capsys, "corpus", "--out", str(out), "--max-crossings", "0")
        assert code == 0
        assert (out / "manifest.jsonl").read_text() == "\n"


class TestCliCheck:
    def test_torusgrid_obstructed(self, capsys, fixture_file):
        path = fixture_file("tg.pd", fixtures.torusgrid().to_pd_text())
        code, out, _ = run_cli(capsys, "check", path)
        assert code == 0
        doc = json.loads(out)
        assert doc["verdict"] == "obstructed"
        assert doc["hayashi"]["complexity"] >= 3

    def test_pseudotref_complex(self, capsys, fixture_file):
        path = fixture_file("p.pd", fixtures.pseudotref().to_pd_text())
        code, out, _ = run_cli(capsys, "check", path, "--from-turaev")
        doc = json.loads(out)
        assert doc["verdict"] == "loop-found"
        assert doc["hayashi"]["complexity"] == 2
        assert doc["hayashi"]["marker"] == "exact"

    def test_planar_not_applicable(self, capsys, fixture_file):
        path = fixture_file("t.pd", "genus-free: true\n" + fixtures.trefoil().to_pd_text())
        code, out, _ = run_cli(capsys, "check", path)
        assert json.loads(out)["verdict"] == "not-applicable"

    def test_non_alternating_refused(self, capsys, fixture_file):
        path = fixture_file("p.pd", "genus-free: true\n" + fixtures.pseudotref().to_pd_text())
        code, out, _ = run_cli(capsys, "check", path)
        assert code == 2
        assert "refused" in json.loads(out)


class TestRender:
    def test_dot_deterministic(self):
        dec = decompose(fixtures.pseudotref())
        assert render.decomposition_dot(dec) == render.decomposition_dot(dec)

    def test_collapsed_ribbons(self):
        dec = decompose(fixtures.gen2a())
        dot = render.decomposition_dot(dec, collapse_ribbons=True)
        assert "ribbon" in dot

    def test_svg_wellformed(self):
        import xml.etree.ElementTree as ET

        dec = decompose(fixtures.gen2b())
        svg = render.decomposition_svg(dec)
        ET.fromstring(svg)
