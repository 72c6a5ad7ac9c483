"""
Tests for the command-line interface.
"""
import json

import pytest

from derivator_combinatorics import __version__, cli, paperlib
from derivator_combinatorics.corpus import ClaimJob, verify_corpus
from derivator_combinatorics.fincat import identity_functor, ordinal_category
from derivator_combinatorics.serialization import dump_fincat, dump_functor, dump_sset, write_json
from derivator_combinatorics.simplicial import nerve


@pytest.fixture
def json_file(tmp_path):
    """Write data to a JSON file and return its path as a string."""

    def write(name, data):
        path = tmp_path / name
        write_json(data, path)
        return str(path)

    return write


class TestArguments:
    """Tests for argument handling and exit codes."""

    def test_version(self, capsys):
        """Test --version prints the package version."""
        assert cli.main(["--version"]) == 0
        assert __version__ in capsys.readouterr().out

    def test_missing_command(self):
        """Test a subcommand is required."""
        assert cli.main([]) == 2

    def test_invalid_dim(self):
        """Test --dim must be non-negative."""
        assert cli.main(["nerve", "x.json", "--dim", "-1"]) == 2

    def test_bad_max_n(self, capsys):
        """Test an out-of-range option is reported, not raised."""
        assert cli.main(["verify", "--max-n", "1"]) == 2
        assert capsys.readouterr().err.startswith("error:")


class TestVerify:
    """Tests for the verify subcommand."""

    def test_filter(self, capsys):
        """Test a filtered run prints the table and passes."""
        assert cli.main(["verify", "--max-n", "2", "--filter", "sigma-chain"]) == 0
        out = capsys.readouterr().out
        assert "sigma-chain.i-cosieve" in out
        assert out.rstrip().endswith("5/5 claims passed")

    def test_unknown_filter(self, capsys):
        """Test an unknown prefix exits with 2."""
        assert cli.main(["verify", "--filter", "nothing"]) == 2
        assert "nothing" in capsys.readouterr().err

    def test_report_file(self, tmp_path):
        """Test --report writes JSON."""
        path = tmp_path / "report.json"
        assert cli.main(["verify", "--filter", "inclusions", "--report", str(path)]) == 0
        data = json.loads(path.read_text(encoding="utf-8"))
        assert data["summary"] == {"failed": 0, "passed": 3, "total": 3}

    def test_failing_claim_exits_1(self, monkeypatch, capsys):
        """Test a failing claim gives exit status 1 and shows in the table."""
        job = ClaimJob(
            "detection.n3.i0j1",
            "detection",
            lambda options: paperlib.detection(3, 0, 1, ell=paperlib.swapped_detection_ell(0, 1)),
        )
        monkeypatch.setattr(
            cli,
            "verify_corpus",
            lambda max_n, prefix, **kwargs: verify_corpus(max_n, prefix, registry=[job], **kwargs),
        )
        assert cli.main(["verify", "--max-n", "3"]) == 1
        out = capsys.readouterr().out
        assert "detection.n3.i0j1.adjunction" in out
        assert "fail" in out


class TestConstructions:
    """Tests for the single-construction subcommands."""

    def test_k0(self, json_file, capsys):
        """Test k0 prints rank, torsion and a description."""
        path = json_file("p.json", {"generators": ["x", "y"], "cofiber": [["x", "y", "x"]], "zero": ["y"]})
        assert cli.main(["k0", path]) == 0
        output = json.loads(capsys.readouterr().out)
        assert output["description"] == "Z/2"
        assert output["torsion"] == [2]

    def test_k0_bad_file(self, json_file, capsys):
        """Test a malformed presentation exits with 2."""
        path = json_file("p.json", {"cofiber": []})
        assert cli.main(["k0", path]) == 2
        assert "generators" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        """Test a missing input file exits with 2."""
        assert cli.main(["k0", str(tmp_path / "absent.json")]) == 2
        assert "not found" in capsys.readouterr().err

    def test_nerve(self, json_file, capsys):
        """Test nerve prints face and degeneracy tables."""
        path = json_file("one.json", dump_fincat(ordinal_category(1)))
        assert cli.main(["nerve", path, "--dim", "2"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["trunc"] == 2
        assert [len(level) for level in data["levels"]] == [2, 3, 4]
        assert len(data["faces"]["2"]) == 3

    def test_sub2(self, json_file, capsys):
        """Test sub2 reads a simplicial set file."""
        path = json_file("x.json", dump_sset(nerve(ordinal_category(1), 3)))
        assert cli.main(["sub2", path, "--dim", "1"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert [len(level) for level in data["levels"]] == [3, 5]

    def test_cylinder(self, json_file, capsys):
        """Test cylinder level sizes."""
        path = json_file("x.json", dump_sset(nerve(ordinal_category(1), 3)))
        assert cli.main(["cylinder", path, "--dim", "1"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert len(data["levels"][0]) == 5

    @pytest.mark.parametrize(
        "corrupt",
        [
            lambda data: data["faces"].__setitem__("1", 5),
            lambda data: data["faces"]["1"][0].__setitem__(0, "oops"),
            lambda data: data["faces"]["1"][0].__setitem__(0, -1),
        ],
        ids=["table-not-a-list", "string-entry", "negative-entry"],
    )
    def test_malformed_tables(self, json_file, capsys, corrupt):
        """Test malformed face tables exit with 2 instead of raising."""
        data = json.loads(json.dumps(dump_sset(nerve(ordinal_category(1), 1))))
        corrupt(data)
        path = json_file("x.json", data)
        assert cli.main(["sub2", path, "--dim", "0"]) == 2
        assert capsys.readouterr().err.startswith("error: faces[1]")

    def test_cylinder_truncation(self, json_file, capsys):
        """Test a short input exits with 2."""
        path = json_file("x.json", dump_sset(nerve(ordinal_category(1), 2)))
        assert cli.main(["cylinder", path, "--dim", "1"]) == 2
        assert "cylinder needs input truncated at 3" in capsys.readouterr().err

    def test_comma_plain_label(self, json_file, capsys, z2):
        """Test --object falls back to a plain string."""
        path = json_file("f.json", dump_functor(identity_functor(z2)))
        assert cli.main(["comma", path, "--object", "*"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert len(data["projection"]) == 2
        assert "general" in data["category"]

    def test_comma_unknown_object(self, json_file, capsys):
        """Test an object outside the target exits with 2."""
        path = json_file("f.json", dump_functor(identity_functor(ordinal_category(1))))
        assert cli.main(["comma", path, "--object", "7"]) == 2

    def test_classify(self, json_file, capsys):
        """Test classify prints the four flags."""
        path = json_file("f.json", dump_functor(identity_functor(ordinal_category(1))))
        assert cli.main(["classify", path]) == 0
        assert json.loads(capsys.readouterr().out) == {
            "cosieve": True,
            "fully_faithful": True,
            "injective_on_objects": True,
            "sieve": True,
        }
