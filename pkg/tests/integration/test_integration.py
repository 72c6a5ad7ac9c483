"""
Integration tests: the full claim corpus and the command line on real files.

To run these tests:
    pytest tests/integration -m integration
"""
import json

import pytest

from derivator_combinatorics import cli
from derivator_combinatorics.corpus import verify_corpus
from derivator_combinatorics.fincat import ordinal_category, poset_functor, terminal
from derivator_combinatorics.serialization import dump_fincat, dump_functor, dump_sset
from derivator_combinatorics.simplicial import nerve

from .factories import PosetFactory, PresentationFactory


@pytest.mark.integration
class TestCorpusIntegration:
    """The corpus at the default options."""

    def test_every_claim_passes(self, full_report):
        """Test the default corpus passes completely."""
        assert full_report.failures() == []
        assert full_report.passed

    def test_claim_families_present(self, full_report):
        """Test every claim family is represented."""
        ids = [claim.id for claim in full_report.claims]
        for prefix in (
            "sigma-chain.",
            "inclusions.",
            "cofiber-square.",
            "sdot.n6.",
            "detection.n6.i4j5.",
            "relative.n6.",
            "squares.n6.",
            "swindle.N20.",
            "ordcalc.",
            "cylinder.m3.",
            "simplicial.m3.",
            "path-space.m3.",
            "k0.",
        ):
            assert any(claim_id.startswith(prefix) for claim_id in ids), prefix

    def test_detection_covers_all_pairs(self, full_report):
        """Test one adjunction claim per valid (n, i, j)."""
        adjunctions = [c for c in full_report.claims if c.id.startswith("detection.") and c.id.endswith(".adjunction")]
        expected = sum(n * (n - 1) // 2 for n in range(2, 7))
        assert len(adjunctions) == expected

    def test_summary_matches_claims(self, full_report):
        """Test summary counts equal the tallies of the claim list."""
        summary = full_report.summary
        assert summary["total"] == len(full_report.claims)
        assert summary["passed"] + summary["failed"] == summary["total"]

    def test_parallel_run_matches_serial(self):
        """Test --jobs does not change claim order or verdicts."""
        serial = verify_corpus(4, jobs=1)
        parallel = verify_corpus(4, jobs=4)
        assert serial.claims == parallel.claims


@pytest.mark.integration
class TestCliIntegration:
    """Command line on files."""

    def test_verify_writes_report(self, tmp_path, capsys):
        """Test verify --report writes sorted JSON with a summary."""
        report_path = tmp_path / "out" / "report.json"
        code = cli.main(["verify", "--max-n", "3", "--report", str(report_path)])

        assert code == 0
        data = json.loads(report_path.read_text(encoding="utf-8"))
        assert data["summary"]["failed"] == 0
        assert data["summary"]["total"] == len(data["claims"])
        assert "claims passed" in capsys.readouterr().out

    def test_k0_from_factory(self, write_json, capsys):
        """Test k0 on a generated presentation."""
        presentation = PresentationFactory.create(generators=3, cofiber=0, seed=1)
        path = write_json("pres.json", PresentationFactory.to_json(presentation))

        assert cli.main(["k0", str(path)]) == 0
        output = json.loads(capsys.readouterr().out)
        assert output["rank"] == 3
        assert output["torsion"] == []

    def test_nerve_then_sub2_then_cylinder(self, write_json, tmp_path, capsys):
        """Test chaining nerve, sub2 and cylinder through files."""
        category = write_json("one.json", dump_fincat(ordinal_category(1)))
        assert cli.main(["nerve", str(category), "--dim", "5"]) == 0
        simplicial_file = tmp_path / "nerve.json"
        simplicial_file.write_text(capsys.readouterr().out, encoding="utf-8")

        assert cli.main(["sub2", str(simplicial_file), "--dim", "2"]) == 0
        sub2_data = json.loads(capsys.readouterr().out)
        assert sub2_data["trunc"] == 2

        assert cli.main(["cylinder", str(simplicial_file), "--dim", "2"]) == 0
        cylinder_data = json.loads(capsys.readouterr().out)
        assert cylinder_data["trunc"] == 2
        assert len(cylinder_data["levels"][0]) == 2 + 3

    def test_sub2_rejects_short_truncation(self, write_json, capsys):
        """Test sub2 exits with 2 when the input is not truncated high enough."""
        path = write_json("short.json", dump_sset(nerve(ordinal_category(1), 2)))

        assert cli.main(["sub2", str(path), "--dim", "1"]) == 2
        assert "sub2" in capsys.readouterr().err

    def test_classify_and_comma(self, write_json, capsys):
        """Test classify and comma on the target inclusion e -> [1]."""
        t = poset_functor(terminal(), ordinal_category(1), {"*": 1}, name="t")
        path = write_json("t.json", dump_functor(t))

        assert cli.main(["classify", str(path)]) == 0
        flags = json.loads(capsys.readouterr().out)
        assert flags["cosieve"] is True
        assert flags["sieve"] is False

        assert cli.main(["comma", str(path), "--object", "1"]) == 0
        result = json.loads(capsys.readouterr().out)
        assert len(result["category"]["poset"]["objects"]) == 1

    def test_nerve_of_random_posets(self, write_json, capsys):
        """Test nerve on generated posets reports one vertex per object."""
        for objects, covers in PosetFactory.create_batch(3, size=4):
            path = write_json("poset.json", PosetFactory.to_json(objects, covers))
            assert cli.main(["nerve", str(path), "--dim", "1"]) == 0
            data = json.loads(capsys.readouterr().out)
            assert len(data["levels"][0]) == 4
