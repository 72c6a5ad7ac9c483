"""
The verification corpus: every checked claim as a stable id with a verdict.

Claims are produced by jobs. A job builds one construction and turns its
checks into claims ``<job id>.<check>``. Jobs run on a thread pool; the
report keeps registry order whatever the completion order.
"""
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from derivator_combinatorics import grothendieck, ordcalc, paperlib, simplicial
from derivator_combinatorics.errors import DerivatorCombinatoricsError, OrderError, UnknownClaimFilter
from derivator_combinatorics.fincat import (
    build_fincat,
    build_poset,
    corner,
    is_finite_direct,
    ordinal_category,
)
from derivator_combinatorics.paperlib import Check

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VerifyOptions:
    """
    Run-time knobs of :func:`verify_corpus`.

    Raises:
        ValueError: If max_n < 2, jobs < 1, swindle_bound < 1 or samples < 0
    """

    max_n: int = 6
    prefix: Optional[str] = None
    jobs: int = 1
    seed: int = 0
    swindle_bound: int = 20
    samples: int = 200

    def __post_init__(self) -> None:
        for name in ("max_n", "jobs", "seed", "swindle_bound", "samples"):
            if not isinstance(getattr(self, name), int):
                raise TypeError(f"{name} must be an int, got {type(getattr(self, name))}")
        if self.max_n < 2:
            raise ValueError(f"max_n must be >= 2, got {self.max_n}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {self.jobs}")
        if self.swindle_bound < 1:
            raise ValueError(f"swindle_bound must be >= 1, got {self.swindle_bound}")
        if self.samples < 0:
            raise ValueError(f"samples cannot be negative, got {self.samples}")
        if self.prefix is not None and not isinstance(self.prefix, str):
            raise TypeError(f"prefix must be a string, got {type(self.prefix)}")


@dataclass(frozen=True)
class Claim:
    """One verdict of the corpus; ``elapsed`` is the time of its job."""

    id: str
    location: str
    verdict: str
    witness: Any = None
    elapsed: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "location": self.location,
            "verdict": self.verdict,
            "witness": self.witness,
            "elapsed": round(self.elapsed, 6),
        }


def _short(value: Any, width: int) -> str:
    text = "" if value is None else repr(value)
    return text if len(text) <= width else text[: width - 3] + "..."


@dataclass(frozen=True)
class VerificationReport:
    """Claims in registry order plus summary tallies."""

    claims: Tuple[Claim, ...]
    options: Optional[VerifyOptions] = field(default=None, compare=False)

    @property
    def summary(self) -> Dict[str, int]:
        passed = sum(1 for claim in self.claims if claim.passed)
        return {"total": len(self.claims), "passed": passed, "failed": len(self.claims) - passed}

    @property
    def passed(self) -> bool:
        return all(claim.passed for claim in self.claims)

    def __len__(self) -> int:
        return len(self.claims)

    def claim(self, claim_id: str) -> Claim:
        for item in self.claims:
            if item.id == claim_id:
                return item
        raise KeyError(claim_id)

    def failures(self) -> List[Claim]:
        return [claim for claim in self.claims if not claim.passed]

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "summary": self.summary,
            "claims": [claim.to_dict() for claim in self.claims],
        }
        if self.options is not None:
            data["options"] = {
                "max_n": self.options.max_n,
                "prefix": self.options.prefix,
                "seed": self.options.seed,
                "swindle_bound": self.options.swindle_bound,
                "samples": self.options.samples,
            }
        return data

    def to_table(self, witness_width: int = 60) -> str:
        """Human-readable table: id, verdict, elapsed seconds and a truncated witness."""
        id_width = max([len("claim")] + [len(claim.id) for claim in self.claims])
        lines = [f"{'claim':<{id_width}}  verdict  elapsed  witness"]
        for claim in self.claims:
            lines.append(
                f"{claim.id:<{id_width}}  {claim.verdict:<7}  {claim.elapsed:7.3f}  "
                f"{_short(claim.witness, witness_width)}".rstrip()
            )
        summary = self.summary
        lines.append(f"{summary['passed']}/{summary['total']} claims passed")
        return "\n".join(lines)

    def write(self, filepath: Union[str, Path]) -> None:
        """Write the machine-readable JSON report (sorted keys)."""
        from derivator_combinatorics.serialization import dump_report

        filepath = Path(filepath)
        filepath.parent.mkdir(parents=True, exist_ok=True)
        filepath.write_text(dump_report(self) + "\n", encoding="utf-8")


JobResult = Union[paperlib.NamedConstruction, Sequence[Check]]


@dataclass(frozen=True)
class ClaimJob:
    """A unit of corpus work; ``run`` returns a construction or a list of checks."""

    id: str
    location: str
    run: Callable[[VerifyOptions], JobResult]

    def selected_by(self, prefix: Optional[str]) -> bool:
        return prefix is None or self.id.startswith(prefix) or prefix.startswith(self.id + ".")


def _execute(job: ClaimJob, options: VerifyOptions) -> List[Claim]:
    started = time.perf_counter()
    try:
        result = job.run(options)
        checks = list(result.checks) if isinstance(result, paperlib.NamedConstruction) else list(result)
    except DerivatorCombinatoricsError as exc:
        checks = [Check("construction", False, {"error": str(exc), "witness": exc.witness})]
    elapsed = time.perf_counter() - started
    claims = [
        Claim(
            id=f"{job.id}.{check.name}",
            location=check.location or job.location,
            verdict="pass" if check.passed else "fail",
            witness=None if check.passed else check.witness,
            elapsed=elapsed,
        )
        for check in checks
    ]
    logger.info("job %s: %d claims in %.3fs", job.id, len(claims), elapsed)
    return claims


def _suite_check(name: str, result: ordcalc.SuiteResult, location: str) -> Check:
    return Check(name, result.passed, result.failure, f"{location} ({result.cases} cases)")


def _ordcalc_checks(options: VerifyOptions) -> List[Check]:
    location = "ordinal calculus of the cylinder construction"
    checks = [
        _suite_check("decomposition", ordcalc.decomposition_suite(8), location),
        _suite_check("intervals", ordcalc.interval_suite(8), location),
        _suite_check("functoriality", ordcalc.functoriality_suite(5), location),
    ]
    phi = ordcalc.MonotoneMap(ordcalc.ordinal(1), ordcalc.ordinal(1), (1, 1))
    blocks = ordcalc.block_decomposition(phi).target
    a_first = ordcalc.a_primary_pullback(phi)
    rejected = False
    if a_first is not None:
        try:
            ordcalc.MonotoneMap(a_first, blocks, tuple((b, a) for a, b in a_first))
        except OrderError:
            rejected = True
    checks.append(
        Check(
            "a-primary-order-rejected",
            rejected,
            None if rejected else list(a_first or ()),
            "pullback ordering: the a-first order does not match the block decomposition",
        )
    )
    return checks


def _cylinder_checks(m: int, options: VerifyOptions) -> List[Check]:
    location = f"ends of the cylinder on nerve([{m}]), truncation 3"
    trunc = 3
    X = simplicial.nerve(ordinal_category(m), 2 * trunc + 1)
    cyl = simplicial.cylinder(X, trunc)
    zero = simplicial.end_slice(cyl, 0)
    one = simplicial.end_slice(cyl, 1)
    base = X.truncate(trunc)
    zero_iso = simplicial.sset_iso(base, zero, candidate=simplicial.SMap(base, zero, cyl.e0))
    sub = simplicial.sub2(X, trunc)
    one_iso = simplicial.sset_iso(sub, one, candidate=simplicial.SMap(sub, one, cyl.e1))
    report = simplicial.validate_sset(cyl.space, samples=options.samples, seed=options.seed)
    return [
        Check("zero-end", zero_iso is not None, None if zero_iso else zero.sizes(), location),
        Check("one-end", one_iso is not None, None if one_iso else one.sizes(), location),
        Check("valid", report.passed, report.to_dict() if not report.passed else None, location),
    ]


def _simplicial_checks(m: int, options: VerifyOptions) -> List[Check]:
    location = f"simplicial constructions on nerve([{m}]), truncation 4"
    category = ordinal_category(m)
    outputs = {
        "nerve": simplicial.nerve(category, 4),
        "sub2": simplicial.sub2(simplicial.nerve(category, 9), 4),
        "path-space": simplicial.path_space(simplicial.nerve(category, 5), 4).space,
    }
    checks = []
    for name, X in outputs.items():
        report = simplicial.validate_sset(X, samples=options.samples, seed=options.seed)
        checks.append(Check(name, report.passed, None if report.passed else report.to_dict(), location))
    ok, count = is_finite_direct(category)
    nondegenerate = sum(len(outputs["nerve"].nondegenerate(k)) for k in range(min(m, 4) + 1))
    expected = 2 ** (m + 1) - 1
    counted = ok and count == expected and nondegenerate == expected
    checks.append(
        Check(
            "finite-direct",
            counted,
            None if counted else {"count": count, "nondegenerate": nondegenerate},
            location,
        )
    )
    return checks


def _monoid_nerve_checks(options: VerifyOptions) -> List[Check]:
    location = "nerve of the two-element group as a one-object category"
    z2 = build_fincat(
        ["*"],
        [("id", "*", "*"), ("g", "*", "*")],
        [("g", "g", "id")],
        identities={"*": "id"},
    )
    X = simplicial.nerve(z2, 3)
    report = simplicial.validate_sset(X, samples=options.samples, seed=options.seed)
    finite, _ = is_finite_direct(z2)
    return [
        Check("valid", report.passed, None if report.passed else report.to_dict(), location),
        Check("not-finite-direct", not finite, None, location),
    ]


def _path_space_checks(m: int, options: VerifyOptions) -> List[Check]:
    location = f"path space of nerve([{m}])"
    trunc = 3
    Y = simplicial.nerve(ordinal_category(m), trunc + 1)
    P = simplicial.path_space(Y, trunc)
    level_ok = set(P.space.level(0)) == set(Y.level(1))
    broken = None
    for n in range(trunc + 1):
        for y in Y.level(1):
            composite = P.d0_proj(n, P.vertex_incl(n, y))
            expected = Y.act(simplicial.DeltaMap.constant(n, 1, 1), y)
            if composite != expected:
                broken = {"n": n, "edge": y}
                break
        if broken:
            break
    maps_ok = all(
        simplicial.validate_smap(f).passed for f in (P.d0_proj, P.vertex_incl)
    )
    return [
        Check("level-zero", level_ok, None, location),
        Check("vertex-composite", broken is None, broken, location),
        Check("maps-simplicial", maps_ok, None, location),
    ]


def _iso_search_checks(options: VerifyOptions) -> List[Check]:
    location = "isomorphism search on small nerves"
    relabeled = build_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    X = simplicial.nerve(ordinal_category(2), 2)
    Y = simplicial.nerve(relabeled, 2)
    Z = simplicial.nerve(corner(), 2)
    found = simplicial.sset_iso(X, Y)
    distinct = simplicial.sset_iso(X, Z)
    return [
        Check("finds-relabeling", found is not None, None, location),
        Check("rejects-corner", distinct is None, None, location),
    ]


def _k0_checks(options: VerifyOptions) -> List[Check]:
    location = "Grothendieck group of cofiber presentations"
    K0Presentation, k0_group = grothendieck.K0Presentation, grothendieck.k0_group
    checks = []

    swindle = k0_group(K0Presentation(("x",), cofiber=(("x", "x", "x"),)))
    checks.append(Check("swindle-trivial", swindle.is_trivial(), swindle.describe(), location))

    wrong_ranks = {}
    for g in range(1, 11):
        group = k0_group(K0Presentation(tuple(f"g{k}" for k in range(g))))
        if group.rank != g or group.torsion:
            wrong_ranks[g] = group.describe()
    checks.append(Check("free-rank", not wrong_ranks, wrong_ranks or None, location))

    additive = K0Presentation(("a", "b", "c"), cofiber=(("a", "b", "c"),))
    group = k0_group(additive)
    ok = group.rank == 2 and not group.torsion and not grothendieck.check_classes(group, additive)
    checks.append(Check("additivity", ok, None if ok else group.describe(), location))

    rng = random.Random(options.seed)
    failure = None
    for case in range(100):
        M = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(4)]
        U, S, V = grothendieck.smith_normal_form(M)
        d = grothendieck.diagonal(S)
        off_diagonal = any(S[i][j] for i in range(4) for j in range(4) if i != j)
        chain = all(a >= 0 for a in d) and all(
            (b == 0) if a == 0 else b % a == 0 for a, b in zip(d, d[1:])
        )
        if (
            grothendieck.matmul(grothendieck.matmul(U, M), V) != S
            or off_diagonal
            or not chain
            or not grothendieck.is_unimodular(U)
            or not grothendieck.is_unimodular(V)
        ):
            failure = {"case": case, "matrix": M}
            break
    checks.append(Check("snf-invariants", failure is None, failure, location))

    base = K0Presentation(
        ("a", "b", "c", "d", "e"),
        cofiber=(("a", "b", "c"), ("c", "d", "e"), ("a", "a", "a")),
        iso=(("b", "d"),),
    )
    reference = k0_group(base)
    moved = None
    for shuffle in range(20):
        generators = list(base.generators)
        cofiber = list(base.cofiber)
        rng.shuffle(generators)
        rng.shuffle(cofiber)
        group = k0_group(K0Presentation(tuple(generators), tuple(cofiber), base.iso))
        if (group.rank, group.torsion) != (reference.rank, reference.torsion):
            moved = {"shuffle": shuffle, "group": group.describe()}
            break
    checks.append(Check("permutation-invariance", moved is None, moved, location))
    return checks


def default_registry(options: VerifyOptions) -> List[ClaimJob]:
    """
    All corpus jobs for the given options, in report order.

    Example:
        >>> [job.id for job in default_registry(VerifyOptions(max_n=2))][:3]
        ['sigma-chain', 'inclusions', 'cofiber-square']
    """
    jobs = [
        ClaimJob("sigma-chain", "sigma pipeline", lambda o: paperlib.sigma_chain()),
        ClaimJob("inclusions", "inclusions", lambda o: paperlib.inclusion_claims()),
        ClaimJob("cofiber-square", "cofiber square", lambda o: paperlib.cofiber_square()),
    ]
    for n in range(2, options.max_n + 1):
        jobs.append(ClaimJob(f"sdot.n{n}", "S_n", lambda o, n=n: paperlib.sdot_functors(n)))
        for j in range(1, n):
            for i in range(j):
                jobs.append(
                    ClaimJob(
                        f"detection.n{n}.i{i}j{j}",
                        "detection",
                        lambda o, n=n, i=i, j=j: paperlib.detection(n, i, j),
                    )
                )
        jobs.append(
            ClaimJob(f"relative.n{n}", "relative S", lambda o, n=n: paperlib.relative_functors(n))
        )
        jobs.append(
            ClaimJob(f"squares.n{n}", "squares", lambda o, n=n: paperlib.squares_construction(n))
        )
    bound = max(options.max_n, options.swindle_bound)
    jobs.append(
        ClaimJob(f"swindle.N{bound}", "swindle", lambda o, N=bound: paperlib.swindle_category(N))
    )
    jobs.append(ClaimJob("ordcalc", "ordinal calculus", _ordcalc_checks))
    for m in range(4):
        jobs.append(ClaimJob(f"cylinder.m{m}", "cylinder", lambda o, m=m: _cylinder_checks(m, o)))
    for m in range(4):
        jobs.append(
            ClaimJob(f"simplicial.m{m}", "simplicial", lambda o, m=m: _simplicial_checks(m, o))
        )
    jobs.append(ClaimJob("simplicial.z2", "simplicial", _monoid_nerve_checks))
    jobs.append(ClaimJob("simplicial.iso-search", "simplicial", _iso_search_checks))
    for m in range(4):
        jobs.append(
            ClaimJob(f"path-space.m{m}", "path space", lambda o, m=m: _path_space_checks(m, o))
        )
    jobs.append(ClaimJob("k0", "K0", _k0_checks))
    return jobs


def verify_corpus(
    max_n: int = 6,
    prefix: Optional[str] = None,
    *,
    jobs: int = 1,
    seed: int = 0,
    swindle_bound: int = 20,
    samples: int = 200,
    registry: Optional[Union[Iterable[ClaimJob], Callable[[VerifyOptions], Iterable[ClaimJob]]]] = None,
) -> VerificationReport:
    """
    Run the corpus and collect a report.

    Args:
        max_n: Largest ``n`` for the ``Ar[n]`` families (at least 2)
        prefix: Keep only claims whose id starts with this prefix
        jobs: Worker threads
        seed: Seed for sampled checks
        swindle_bound: Lower bound for the swindle truncation
        samples: Sampled composites per simplicial validation
        registry: Jobs to run instead of :func:`default_registry`

    Returns:
        VerificationReport in registry order

    Raises:
        ValueError: If an option is out of range
        UnknownClaimFilter: If the prefix selects no claim

    Example:
        >>> len(verify_corpus(4, "sigma-chain"))
        5
    """
    options = VerifyOptions(
        max_n=max_n,
        prefix=prefix,
        jobs=jobs,
        seed=seed,
        swindle_bound=swindle_bound,
        samples=samples,
    )
    if registry is None:
        selected_jobs = default_registry(options)
    elif callable(registry):
        selected_jobs = list(registry(options))
    else:
        selected_jobs = list(registry)
    selected_jobs = [job for job in selected_jobs if job.selected_by(prefix)]
    if not selected_jobs:
        raise UnknownClaimFilter(f"no claim id starts with {prefix!r}", witness=prefix)

    logger.info("running %d jobs on %d worker(s)", len(selected_jobs), options.jobs)
    if options.jobs == 1:
        results = [_execute(job, options) for job in selected_jobs]
    else:
        with ThreadPoolExecutor(max_workers=options.jobs) as pool:
            results = list(pool.map(lambda job: _execute(job, options), selected_jobs))

    claims = tuple(
        claim
        for batch in results
        for claim in batch
        if prefix is None or claim.id.startswith(prefix)
    )
    if not claims:
        raise UnknownClaimFilter(f"no claim id starts with {prefix!r}", witness=prefix)
    for claim in claims:
        if not claim.passed:
            logger.warning("claim %s failed: %r", claim.id, claim.witness)
    report = VerificationReport(claims, options)
    logger.info("%d/%d claims passed", report.summary["passed"], report.summary["total"])
    return report
