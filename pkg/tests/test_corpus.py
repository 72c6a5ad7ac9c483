"""
Tests for the claim registry, verify_corpus and the report.
"""
import json
import logging

import pytest

from derivator_combinatorics import paperlib
from derivator_combinatorics.corpus import (
    Claim,
    ClaimJob,
    VerificationReport,
    VerifyOptions,
    default_registry,
    verify_corpus,
)
from derivator_combinatorics.errors import TruncationError, UnknownClaimFilter
from derivator_combinatorics.paperlib import Check


def swapped_detection_job() -> ClaimJob:
    """The detection claim for (3, 0, 1) run with the corner labels swapped."""
    return ClaimJob(
        "detection.n3.i0j1",
        "detection",
        lambda options: paperlib.detection(3, 0, 1, ell=paperlib.swapped_detection_ell(0, 1)),
    )


class TestVerifyOptions:
    """Tests for option validation."""

    @pytest.mark.parametrize(
        "kwargs",
        [{"max_n": 1}, {"jobs": 0}, {"swindle_bound": 0}, {"samples": -1}],
    )
    def test_out_of_range(self, kwargs):
        """Test range checks."""
        with pytest.raises(ValueError):
            VerifyOptions(**kwargs)

    def test_types(self):
        """Test non-int options are rejected."""
        with pytest.raises(TypeError):
            VerifyOptions(max_n="6")
        with pytest.raises(TypeError):
            VerifyOptions(prefix=3)


class TestRegistry:
    """Tests for default_registry."""

    def test_order(self):
        """Test the fixed families come first and k0 last."""
        ids = [job.id for job in default_registry(VerifyOptions(max_n=2))]
        assert ids[:3] == ["sigma-chain", "inclusions", "cofiber-square"]
        assert ids[3:7] == ["sdot.n2", "detection.n2.i0j1", "relative.n2", "squares.n2"]
        assert ids[-1] == "k0"

    def test_detection_jobs(self):
        """Test one detection job per 0 <= i < j <= n-1."""
        ids = [job.id for job in default_registry(VerifyOptions(max_n=6))]
        detections = [i for i in ids if i.startswith("detection.")]
        assert len(detections) == 35
        assert len(set(ids)) == len(ids)

    @pytest.mark.parametrize("max_n, bound, expected", [(2, 5, "swindle.N5"), (6, 3, "swindle.N6")])
    def test_swindle_truncation(self, max_n, bound, expected):
        """Test the swindle runs at max(max_n, swindle_bound)."""
        ids = [job.id for job in default_registry(VerifyOptions(max_n=max_n, swindle_bound=bound))]
        assert expected in ids

    def test_selection(self):
        """Test prefixes select jobs and claim ids select their job."""
        job = ClaimJob("sdot.n2", "S_n", lambda options: [])
        assert job.selected_by(None)
        assert job.selected_by("sdot")
        assert job.selected_by("sdot.n2.i0-cosieve")
        assert not job.selected_by("sdot.n3")


class TestVerifyCorpus:
    """Tests for verify_corpus."""

    def test_prefix(self):
        """Test the sigma chain contributes five passing claims."""
        report = verify_corpus(4, "sigma-chain")
        assert len(report) == 5
        assert report.passed
        assert report.summary == {"total": 5, "passed": 5, "failed": 0}

    def test_single_claim(self):
        """Test a full claim id runs one claim."""
        report = verify_corpus(3, "detection.n3.i0j1.adjunction")
        assert [claim.id for claim in report.claims] == ["detection.n3.i0j1.adjunction"]

    def test_unknown_prefix(self):
        """Test a prefix matching nothing raises."""
        with pytest.raises(UnknownClaimFilter) as exc_info:
            verify_corpus(4, "no-such-claim")
        assert exc_info.value.witness == "no-such-claim"

    def test_failing_claim(self, caplog):
        """Test a swapped left adjoint fails the adjunction claim with a witness."""
        with caplog.at_level(logging.WARNING, logger="derivator_combinatorics.corpus"):
            report = verify_corpus(registry=[swapped_detection_job()])
        assert not report.passed
        claim = report.claim("detection.n3.i0j1.adjunction")
        assert claim.verdict == "fail"
        assert claim.witness == ((0, 2), (0, 1))
        assert "detection.n3.i0j1.adjunction" in caplog.text

    def test_construction_error_becomes_claim(self):
        """Test a job raising a domain error yields a failed construction claim."""

        def broken(options):
            raise TruncationError("too short", witness=3)

        report = verify_corpus(registry=[ClaimJob("broken", "nowhere", broken)])
        claim = report.claim("broken.construction")
        assert not claim.passed
        assert claim.witness == {"error": "too short", "witness": 3}
        assert claim.location == "nowhere"

    def test_registry_callable(self):
        """Test the registry may be a function of the options."""
        report = verify_corpus(
            registry=lambda options: [ClaimJob("seeded", "here", lambda o: [Check("seed", o.seed == 7)])],
            seed=7,
        )
        assert report.passed

    def test_parallel_keeps_order(self):
        """Test worker threads do not reorder claims."""
        serial = verify_corpus(3, "detection", jobs=1)
        parallel = verify_corpus(3, "detection", jobs=3)
        assert [c.id for c in serial.claims] == [c.id for c in parallel.claims]
        assert serial.claims == parallel.claims

    @pytest.mark.parametrize("prefix", ["ordcalc", "k0", "simplicial.m1", "cylinder.m1", "path-space.m1"])
    def test_families_pass(self, prefix):
        """Test the non-parametric families pass."""
        assert verify_corpus(2, prefix, samples=50).passed


class TestReport:
    """Tests for VerificationReport."""

    def report(self) -> VerificationReport:
        return VerificationReport(
            (
                Claim("a.one", "here", "pass", elapsed=0.5),
                Claim("a.two", "there", "fail", witness={"x": (1, 2)}),
            ),
            VerifyOptions(max_n=3),
        )

    def test_summary(self):
        """Test tallies and failures."""
        report = self.report()
        assert report.summary == {"total": 2, "passed": 1, "failed": 1}
        assert [claim.id for claim in report.failures()] == ["a.two"]
        assert not report.passed

    def test_claim_lookup(self):
        """Test lookup by id."""
        with pytest.raises(KeyError):
            self.report().claim("a.three")

    def test_table(self):
        """Test the table lists each claim and ends with the tally."""
        lines = self.report().to_table().splitlines()
        assert lines[0].startswith("claim")
        assert lines[1].startswith("a.one")
        assert "fail" in lines[2]
        assert lines[-1] == "1/2 claims passed"

    def test_elapsed_not_compared(self):
        """Test claims compare without timing."""
        assert Claim("a", "x", "pass", elapsed=1.0) == Claim("a", "x", "pass", elapsed=2.0)

    def test_write(self, tmp_path):
        """Test the JSON report has a summary, claims and options."""
        path = tmp_path / "reports" / "corpus.json"
        self.report().write(path)
        data = json.loads(path.read_text(encoding="utf-8"))
        assert data["summary"]["failed"] == 1
        assert data["claims"][1]["witness"] == {"x": [1, 2]}
        assert data["options"]["max_n"] == 3
        assert list(data) == sorted(data)
