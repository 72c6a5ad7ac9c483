"""
Truncated simplicial sets with the full action of monotone maps.

An :class:`SSet` is truncated at a dimension ``trunc`` and knows how every
monotone map ``[m] -> [k]`` with ``m, k <= trunc`` acts on its simplices.
Constructions that reindex along ``A -> A*A`` or ``[n] -> [n+1]`` need
higher input dimensions than they produce; each one states what it
consumes and raises :class:`TruncationError` otherwise.
"""
import functools
import itertools
import logging
import random
from dataclasses import dataclass
from typing import (
    Any,
    Callable,
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Set,
    Tuple,
)

from derivator_combinatorics.errors import OrderError, SearchBoundExceeded, TruncationError
from derivator_combinatorics.fincat import FinCat, Functor, MorId
from derivator_combinatorics.ordcalc import MonotoneMap, induced_map, ordinal

logger = logging.getLogger(__name__)

Label = Hashable


@dataclass(frozen=True)
class DeltaMap:
    """
    A monotone map ``[source] -> [target]`` given by its values.

    Raises:
        OrderError: If values are empty, out of range or decreasing
    """

    values: Tuple[int, ...]
    target: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))
        if not self.values:
            raise OrderError("a map of ordinals needs at least one value")
        if any(v < 0 or v > self.target for v in self.values):
            raise OrderError(f"values {self.values} leave [{self.target}]")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise OrderError(f"values {self.values} are not monotone", witness=self.values)

    @property
    def source(self) -> int:
        return len(self.values) - 1

    def __call__(self, i: int) -> int:
        return self.values[i]

    def compose(self, first: "DeltaMap") -> "DeltaMap":
        """Return ``self∘first``."""
        if first.target != self.source:
            raise OrderError(f"cannot compose [{first.target}] with a map from [{self.source}]")
        return DeltaMap(tuple(self.values[v] for v in first.values), self.target)

    def join(self, other: "DeltaMap") -> "DeltaMap":
        """``self * other: [m]*[m'] -> [k]*[k']``."""
        shift = self.target + 1
        return DeltaMap(self.values + tuple(shift + v for v in other.values), shift + other.target)

    def shifted(self) -> "DeltaMap":
        """``[m+1] -> [n+1]`` with ``0 -> 0`` and ``i -> self(i-1) + 1``."""
        return DeltaMap((0,) + tuple(v + 1 for v in self.values), self.target + 1)

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_surjective(self) -> bool:
        return len(set(self.values)) == self.target + 1

    def factor(self) -> Tuple["DeltaMap", "DeltaMap"]:
        """Epi-mono factorization ``self = mono∘epi``; returns ``(epi, mono)``."""
        image = sorted(set(self.values))
        position = {v: k for k, v in enumerate(image)}
        epi = DeltaMap(tuple(position[v] for v in self.values), len(image) - 1)
        mono = DeltaMap(tuple(image), self.target)
        return epi, mono

    def to_monotone_map(self) -> MonotoneMap:
        return MonotoneMap(ordinal(self.source), ordinal(self.target), self.values)

    @classmethod
    def identity(cls, n: int) -> "DeltaMap":
        return cls(tuple(range(n + 1)), n)

    @classmethod
    def coface(cls, n: int, i: int) -> "DeltaMap":
        """``[n-1] -> [n]`` skipping ``i``."""
        if not 0 <= i <= n or n < 1:
            raise OrderError(f"no coface {i} into [{n}]")
        return cls(tuple(j if j < i else j + 1 for j in range(n)), n)

    @classmethod
    def codegeneracy(cls, n: int, j: int) -> "DeltaMap":
        """``[n+1] -> [n]`` hitting ``j`` twice."""
        if not 0 <= j <= n:
            raise OrderError(f"no codegeneracy {j} onto [{n}]")
        return cls(tuple(k if k <= j else k - 1 for k in range(n + 2)), n)

    @classmethod
    def constant(cls, m: int, value: int, target: int) -> "DeltaMap":
        return cls((value,) * (m + 1), target)


@functools.lru_cache(maxsize=None)
def delta_maps(m: int, k: int) -> Tuple[DeltaMap, ...]:
    """All monotone maps ``[m] -> [k]``."""
    return tuple(
        DeltaMap(values, k)
        for values in itertools.combinations_with_replacement(range(k + 1), m + 1)
    )


FaceFn = Callable[[Label, int, int], Label]


def act_by_generators(alpha: DeltaMap, x: Label, face: FaceFn, degeneracy: FaceFn) -> Label:
    """
    Act by ``alpha`` using only faces and degeneracies.

    ``face(x, i, k)`` is ``d_i`` on a ``k``-simplex and ``degeneracy(x, j, k)``
    is ``s_j`` on a ``k``-simplex. ``alpha`` is split as ``mono∘epi``; the
    mono acts by faces (largest omitted vertex first), the epi by
    degeneracies.
    """
    epi, mono = alpha.factor()

    current, values, top = x, list(mono.values), mono.target
    while top > len(values) - 1:
        missing = max(set(range(top + 1)) - set(values))
        current = face(current, missing, top)
        values = [v if v < missing else v - 1 for v in values]
        top -= 1

    return _act_epi(epi, current, degeneracy)


def _act_epi(sigma: DeltaMap, y: Label, degeneracy: FaceFn) -> Label:
    if sigma.source == sigma.target:
        return y
    values = sigma.values
    i = next(t for t in range(len(values) - 1) if values[t] == values[t + 1])
    rest = DeltaMap(values[: i + 1] + values[i + 2 :], sigma.target)
    return degeneracy(_act_epi(rest, y, degeneracy), i, sigma.source - 1)


class SSet:
    """
    A simplicial set truncated at ``trunc``.

    Args:
        trunc: Highest dimension present
        levels: ``levels[k]`` lists the ``k``-simplices
        act: ``act(alpha, x)`` for ``alpha: [m] -> [k]`` and ``x`` a ``k``-simplex
        name: Optional name used in reports
    """

    def __init__(
        self,
        trunc: int,
        levels: Sequence[Iterable[Label]],
        act: Callable[[DeltaMap, Label], Label],
        name: str = "",
    ) -> None:
        if not isinstance(trunc, int) or trunc < 0:
            raise ValueError(f"trunc must be a non-negative int, got {trunc!r}")
        if len(levels) != trunc + 1:
            raise ValueError(f"expected {trunc + 1} levels, got {len(levels)}")
        self.trunc = trunc
        self.name = name
        self._levels: Tuple[Tuple[Label, ...], ...] = tuple(tuple(level) for level in levels)
        self._sets: Tuple[FrozenSet[Label], ...] = tuple(frozenset(level) for level in self._levels)
        self._act = act
        self._cache: Dict[Tuple[DeltaMap, Label], Label] = {}

    def __repr__(self) -> str:
        label = f"{self.name}, " if self.name else ""
        return f"SSet({label}trunc={self.trunc}, sizes={self.sizes()})"

    def level(self, k: int) -> Tuple[Label, ...]:
        if not 0 <= k <= self.trunc:
            raise TruncationError(f"level {k} is outside truncation {self.trunc}")
        return self._levels[k]

    def contains(self, k: int, x: Label) -> bool:
        return 0 <= k <= self.trunc and x in self._sets[k]

    def sizes(self) -> List[int]:
        return [len(level) for level in self._levels]

    def act(self, alpha: DeltaMap, x: Label) -> Label:
        """Apply ``alpha^*`` to a ``alpha.target``-simplex."""
        if alpha.target > self.trunc or alpha.source > self.trunc:
            raise TruncationError(
                f"map [{alpha.source}] -> [{alpha.target}] exceeds truncation {self.trunc}"
            )
        key = (alpha, x)
        result = self._cache.get(key)
        if result is None:
            result = self._act(alpha, x)
            self._cache[key] = result
        return result

    def face(self, x: Label, i: int, k: int) -> Label:
        """``d_i`` of the ``k``-simplex ``x``."""
        return self.act(DeltaMap.coface(k, i), x)

    def degeneracy(self, x: Label, j: int, k: int) -> Label:
        """``s_j`` of the ``k``-simplex ``x``."""
        return self.act(DeltaMap.codegeneracy(k, j), x)

    def is_degenerate(self, x: Label, k: int) -> bool:
        return any(
            self.degeneracy(self.face(x, j, k), j, k - 1) == x for j in range(k)
        )

    def nondegenerate(self, k: int) -> List[Label]:
        return [x for x in self.level(k) if not self.is_degenerate(x, k)]

    def truncate(self, trunc: int) -> "SSet":
        """The same simplicial set forgetting dimensions above ``trunc``."""
        if trunc > self.trunc:
            raise TruncationError(f"cannot raise truncation {self.trunc} to {trunc}")
        return SSet(trunc, self._levels[: trunc + 1], self.act, name=self.name)

    def subobject(self, predicate: Callable[[int, Label], bool], name: str = "") -> "SSet":
        """
        Levelwise subset with the restricted action.

        The predicate must select a sub-simplicial set; run
        :func:`validate_sset` on the result when unsure.
        """
        levels = [[x for x in level if predicate(k, x)] for k, level in enumerate(self._levels)]
        return SSet(self.trunc, levels, self.act, name=name or self.name)

    @classmethod
    def from_tables(
        cls,
        trunc: int,
        levels: Sequence[Sequence[Label]],
        faces: Dict[int, Sequence[Sequence[int]]],
        degeneracies: Dict[int, Sequence[Sequence[int]]],
        name: str = "",
    ) -> "SSet":
        """
        Rebuild the full action from face and degeneracy index tables.

        ``faces[k][i][p]`` is the position in level ``k-1`` of ``d_i`` of the
        ``p``-th ``k``-simplex; ``degeneracies[k][j][p]`` likewise into level
        ``k+1``.
        """
        levels = [tuple(level) for level in levels]
        positions = [{x: p for p, x in enumerate(level)} for level in levels]

        def face(x: Label, i: int, k: int) -> Label:
            return levels[k - 1][faces[k][i][positions[k][x]]]

        def degeneracy(x: Label, j: int, k: int) -> Label:
            return levels[k + 1][degeneracies[k][j][positions[k][x]]]

        def act(alpha: DeltaMap, x: Label) -> Label:
            return act_by_generators(alpha, x, face, degeneracy)

        return cls(trunc, levels, act, name=name)


class SMap:
    """
    A map of simplicial sets given levelwise by ``fn(k, x)``.

    Raises:
        TruncationError: If source and target truncations differ
    """

    def __init__(
        self,
        source: SSet,
        target: SSet,
        fn: Callable[[int, Label], Label],
        name: str = "",
    ) -> None:
        if source.trunc != target.trunc:
            raise TruncationError(
                f"source truncation {source.trunc} differs from target truncation {target.trunc}"
            )
        self.source = source
        self.target = target
        self.name = name
        self._fn = fn

    def __call__(self, k: int, x: Label) -> Label:
        return self._fn(k, x)

    def __repr__(self) -> str:
        return f"SMap({self.name or 'unnamed'}: {self.source!r} -> {self.target!r})"

    def compose(self, first: "SMap") -> "SMap":
        """Return ``self∘first``."""
        return SMap(first.source, self.target, lambda k, x: self(k, first(k, x)))


@dataclass(frozen=True)
class SSetReport:
    """Outcome of :func:`validate_sset` or :func:`validate_smap`."""

    passed: bool
    checks: int
    violation: str = ""
    witness: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "checks": self.checks,
            "violation": self.violation,
            "witness": self.witness,
        }


class _Violation(Exception):
    def __init__(self, violation: str, witness: Dict[str, Any]) -> None:
        super().__init__(violation)
        self.violation = violation
        self.witness = witness


def _expect(condition: bool, violation: str, **witness: Any) -> None:
    if not condition:
        raise _Violation(violation, witness)


def validate_sset(
    X: SSet, exhaustive: bool = False, samples: int = 200, seed: int = 0
) -> SSetReport:
    """
    Check that the action of ``X`` is a functor on monotone maps.

    Checks, in order: identities act trivially; faces and degeneracies
    land in the right level; the simplicial identities; every monotone map
    acts like its face/degeneracy factorization; then composites
    ``(alpha∘beta)^* = beta^*alpha^*``, all of them when ``exhaustive`` is
    set, otherwise ``samples`` seeded random triples.

    Returns:
        SSetReport naming the first identity that breaks, e.g.
        ``"d_i d_j = d_{j-1} d_i"`` with ``i``, ``j``, ``k`` and the simplex
    """
    checks = 0
    N = X.trunc
    try:
        for k in range(N + 1):
            identity = DeltaMap.identity(k)
            for x in X.level(k):
                checks += 1
                _expect(X.act(identity, x) == x, "identity acts trivially", k=k, simplex=x)

        for k in range(N + 1):
            for x in X.level(k):
                for i in range(k + 1 if k > 0 else 0):
                    checks += 1
                    _expect(
                        X.contains(k - 1, X.face(x, i, k)),
                        "face lands in level k-1",
                        i=i, k=k, simplex=x,
                    )
                if k < N:
                    for j in range(k + 1):
                        checks += 1
                        _expect(
                            X.contains(k + 1, X.degeneracy(x, j, k)),
                            "degeneracy lands in level k+1",
                            j=j, k=k, simplex=x,
                        )

        for k in range(2, N + 1):
            for x in X.level(k):
                for j in range(1, k + 1):
                    for i in range(j):
                        checks += 1
                        left = X.face(X.face(x, j, k), i, k - 1)
                        right = X.face(X.face(x, i, k), j - 1, k - 1)
                        _expect(left == right, "d_i d_j = d_{j-1} d_i", i=i, j=j, k=k, simplex=x)

        for k in range(N):
            for x in X.level(k):
                for j in range(k + 1):
                    sx = X.degeneracy(x, j, k)
                    for i in range(k + 2):
                        checks += 1
                        left = X.face(sx, i, k + 1)
                        if i < j:
                            right = X.degeneracy(X.face(x, i, k), j - 1, k - 1)
                            rule = "d_i s_j = s_{j-1} d_i"
                        elif i in (j, j + 1):
                            right = x
                            rule = "d_j s_j = d_{j+1} s_j = id"
                        else:
                            right = X.degeneracy(X.face(x, i - 1, k), j, k - 1)
                            rule = "d_i s_j = s_j d_{i-1}"
                        _expect(left == right, rule, i=i, j=j, k=k, simplex=x)

        for k in range(N - 1):
            for x in X.level(k):
                for j in range(k + 1):
                    for i in range(j + 1):
                        checks += 1
                        left = X.degeneracy(X.degeneracy(x, j, k), i, k + 1)
                        right = X.degeneracy(X.degeneracy(x, i, k), j + 1, k + 1)
                        _expect(left == right, "s_i s_j = s_{j+1} s_i", i=i, j=j, k=k, simplex=x)

        for k in range(N + 1):
            for m in range(N + 1):
                for alpha in delta_maps(m, k):
                    for x in X.level(k):
                        checks += 1
                        value = X.act(alpha, x)
                        _expect(
                            X.contains(m, value), "action lands in the right level",
                            alpha=list(alpha.values), simplex=x,
                        )
                        _expect(
                            value == act_by_generators(alpha, x, X.face, X.degeneracy),
                            "action agrees with faces and degeneracies",
                            alpha=list(alpha.values), simplex=x,
                        )

        if exhaustive:
            triples: Iterable[Tuple[DeltaMap, DeltaMap, Label]] = (
                (alpha, beta, x)
                for k in range(N + 1)
                for m in range(N + 1)
                for n in range(N + 1)
                for alpha in delta_maps(m, k)
                for beta in delta_maps(n, m)
                for x in X.level(k)
            )
        else:
            triples = _random_triples(X, samples, seed)
        for alpha, beta, x in triples:
            checks += 1
            _expect(
                X.act(alpha.compose(beta), x) == X.act(beta, X.act(alpha, x)),
                "(alpha∘beta)^* = beta^* alpha^*",
                alpha=list(alpha.values), beta=list(beta.values), simplex=x,
            )
    except _Violation as failure:
        logger.debug("validation of %r failed: %s", X, failure.violation)
        return SSetReport(False, checks, failure.violation, failure.witness)
    except (KeyError, IndexError, TypeError, OrderError, TruncationError) as exc:
        return SSetReport(False, checks, "action raised", {"error": repr(exc)})
    return SSetReport(True, checks)


def _random_triples(
    X: SSet, samples: int, seed: int
) -> List[Tuple[DeltaMap, DeltaMap, Label]]:
    rng = random.Random(seed)
    nonempty = [k for k in range(X.trunc + 1) if X.level(k)]
    triples = []
    for _ in range(samples if nonempty else 0):
        k = rng.choice(nonempty)
        m = rng.randint(0, X.trunc)
        n = rng.randint(0, X.trunc)
        alpha = rng.choice(delta_maps(m, k))
        beta = rng.choice(delta_maps(n, m))
        triples.append((alpha, beta, rng.choice(X.level(k))))
    return triples


def validate_smap(f: SMap) -> SSetReport:
    """
    Check that ``f`` lands in the target and commutes with faces and degeneracies.

    Faces and degeneracies generate all monotone maps, so this is the full
    naturality condition.
    """
    X, Y = f.source, f.target
    checks = 0
    try:
        for k in range(X.trunc + 1):
            for x in X.level(k):
                checks += 1
                fx = f(k, x)
                _expect(Y.contains(k, fx), "map lands in the target level", k=k, simplex=x)
                for i in range(k + 1 if k > 0 else 0):
                    checks += 1
                    _expect(
                        f(k - 1, X.face(x, i, k)) == Y.face(fx, i, k),
                        "f d_i = d_i f", i=i, k=k, simplex=x,
                    )
                if k < X.trunc:
                    for j in range(k + 1):
                        checks += 1
                        _expect(
                            f(k + 1, X.degeneracy(x, j, k)) == Y.degeneracy(fx, j, k),
                            "f s_j = s_j f", j=j, k=k, simplex=x,
                        )
    except _Violation as failure:
        return SSetReport(False, checks, failure.violation, failure.witness)
    except (KeyError, IndexError, TypeError, OrderError, TruncationError) as exc:
        return SSetReport(False, checks, "map raised", {"error": repr(exc)})
    return SSetReport(True, checks)


def _chains(category: FinCat, k: int) -> List[Tuple[Label, Tuple[MorId, ...]]]:
    chains: List[Tuple[Label, Tuple[MorId, ...]]] = []

    def extend(start: Label, current: Label, arrows: Tuple[MorId, ...]) -> None:
        if len(arrows) == k:
            chains.append((start, arrows))
            return
        for nxt in category.successors(current):
            for m in category.hom(current, nxt):
                extend(start, nxt, arrows + (m,))

    for x in category.objects:
        extend(x, x, ())
    return chains


def nerve(category: FinCat, trunc: int) -> SSet:
    """
    The nerve truncated at ``trunc``.

    A ``k``-simplex is a chain ``(x0, (m1, ..., mk))`` of composable
    morphisms, identities allowed; monotone maps act by precomposition.

    Example:
        >>> from derivator_combinatorics.fincat import ordinal_category
        >>> nerve(ordinal_category(1), 2).sizes()
        [2, 3, 4]
    """

    def vertices(chain: Tuple[Label, Tuple[MorId, ...]]) -> List[Label]:
        return [chain[0]] + [m[1] for m in chain[1]]

    def arrow(chain: Tuple[Label, Tuple[MorId, ...]], i: int, j: int) -> MorId:
        points = vertices(chain)
        if category.is_thin:
            return category.hom(points[i], points[j])[0]
        return category.compose_path(chain[1][i:j], points[i])

    def act(alpha: DeltaMap, chain: Tuple[Label, Tuple[MorId, ...]]) -> Tuple[Label, Tuple[MorId, ...]]:
        points = vertices(chain)
        values = alpha.values
        return (
            points[values[0]],
            tuple(arrow(chain, values[t - 1], values[t]) for t in range(1, len(values))),
        )

    levels = [_chains(category, k) for k in range(trunc + 1)]
    logger.debug("nerve of %r: level sizes %s", category, [len(level) for level in levels])
    return SSet(trunc, levels, act, name="nerve")


def nerve_map(functor: Functor, trunc: int, source: Optional[SSet] = None, target: Optional[SSet] = None) -> SMap:
    """The map of nerves induced by a functor."""
    source = source or nerve(functor.source, trunc)
    target = target or nerve(functor.target, trunc)
    return SMap(
        source,
        target,
        lambda k, chain: (functor(chain[0]), tuple(functor.fmap(m) for m in chain[1])),
        name=f"N({functor.name})" if functor.name else "",
    )


def standard_simplex(k: int, trunc: int) -> SSet:
    """``Delta^k``: ``m``-simplices are monotone maps ``[m] -> [k]`` as value tuples."""
    levels = [[alpha.values for alpha in delta_maps(m, k)] for m in range(trunc + 1)]

    def act(alpha: DeltaMap, values: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(values[v] for v in alpha.values)

    return SSet(trunc, levels, act, name=f"Delta^{k}")


def constant(labels: Iterable[Label], trunc: int, name: str = "constant") -> SSet:
    """The constant simplicial set on a set of labels."""
    labels = list(labels)
    return SSet(trunc, [labels] * (trunc + 1), lambda alpha, x: x, name=name)


def _require(X: SSet, needed: int, construction: str) -> None:
    if X.trunc < needed:
        raise TruncationError(
            f"{construction} needs input truncated at {needed} or higher, got {X.trunc}"
        )


def sub2(X: SSet, trunc: int) -> SSet:
    """
    Two-fold edgewise subdivision ``A -> X(A*A)``.

    Args:
        X: Input truncated at ``2*trunc + 1`` or higher
        trunc: Output truncation

    Raises:
        TruncationError: If ``X`` is not truncated high enough
    """
    _require(X, 2 * trunc + 1, "sub2")
    levels = [X.level(2 * k + 1) for k in range(trunc + 1)]
    return SSet(trunc, levels, lambda psi, y: X.act(psi.join(psi), y), name=f"sub2({X.name})")


def sub2_map(f: SMap, trunc: int) -> SMap:
    """``sub2`` on a map: the component at ``k`` is ``f`` at ``2k + 1``."""
    return SMap(
        sub2(f.source, trunc),
        sub2(f.target, trunc),
        lambda k, y: f(2 * k + 1, y),
        name=f"sub2({f.name})" if f.name else "",
    )


class PathSpace(NamedTuple):
    """Result of :func:`path_space`."""

    space: SSet
    d0_proj: SMap
    vertex_incl: SMap


def path_space(X: SSet, trunc: int) -> PathSpace:
    """
    Path space ``P X``: level ``n`` is level ``n+1`` of ``X``.

    ``alpha: [m] -> [n]`` acts through ``[m+1] -> [n+1]``, ``0 -> 0``,
    ``i -> alpha(i-1) + 1``. ``d0_proj`` acts by the coface ``i -> i+1``;
    ``vertex_incl`` sends an edge ``y`` to ``sigma_n^* y`` where
    ``sigma_n: [n+1] -> [1]`` is ``0`` at ``0`` and ``1`` elsewhere.

    Raises:
        TruncationError: If ``X`` is not truncated at ``trunc + 1`` or higher
    """
    _require(X, trunc + 1, "path_space")
    space = SSet(
        trunc,
        [X.level(n + 1) for n in range(trunc + 1)],
        lambda alpha, y: X.act(alpha.shifted(), y),
        name=f"P({X.name})",
    )
    base = X.truncate(trunc)
    d0_proj = SMap(space, base, lambda n, y: X.act(DeltaMap.coface(n + 1, 0), y), name="d0")
    edges = constant(X.level(1), trunc, name="edges")
    vertex_incl = SMap(
        edges,
        space,
        lambda n, y: X.act(DeltaMap((0,) + (1,) * (n + 1), 1), y),
        name="vertex_incl",
    )
    return PathSpace(space, d0_proj, vertex_incl)


@functools.lru_cache(maxsize=None)
def _lift(psi: DeltaMap, phi: Tuple[int, ...]) -> DeltaMap:
    phi_map = MonotoneMap(ordinal(len(phi) - 1), ordinal(1), phi)
    lifted = induced_map(psi.to_monotone_map(), phi_map)
    return DeltaMap(lifted.positions(), len(lifted.target) - 1)


def pullback_dimension(phi: Sequence[int]) -> int:
    """Dimension of ``phi^-1(s)``: one vertex per 0 and two per 1, minus one."""
    return sum(1 if v == 0 else 2 for v in phi) - 1


class Cylinder(NamedTuple):
    """Result of :func:`cylinder`."""

    space: SSet
    e0: SMap
    e1: SMap
    proj: SMap


def cylinder(X: SSet, trunc: int) -> Cylinder:
    """
    The cylinder ``I X`` with its two ends and the projection to ``Delta^1``.

    An ``n``-simplex is ``(phi, y)`` with ``phi: [n] -> [1]`` (a value
    tuple) and ``y`` a simplex of ``X`` of dimension ``|phi^-1(s)| - 1``.
    ``psi: [m] -> [n]`` sends ``(phi, y)`` to ``(phi∘psi, psi'^* y)``.
    ``e0`` embeds ``X`` at ``phi = 0``, ``e1`` embeds ``sub2(X)`` at
    ``phi = 1`` and ``proj`` forgets ``y``.

    Raises:
        TruncationError: If ``X`` is not truncated at ``2*trunc + 1`` or higher
    """
    _require(X, 2 * trunc + 1, "cylinder")
    levels = []
    for n in range(trunc + 1):
        level = []
        for phi in delta_maps(n, 1):
            for y in X.level(pullback_dimension(phi.values)):
                level.append((phi.values, y))
        levels.append(level)
    logger.debug("cylinder of %r: level sizes %s", X, [len(level) for level in levels])

    def act(psi: DeltaMap, simplex: Tuple[Tuple[int, ...], Label]) -> Tuple[Tuple[int, ...], Label]:
        phi, y = simplex
        return (tuple(phi[v] for v in psi.values), X.act(_lift(psi, phi), y))

    space = SSet(trunc, levels, act, name=f"I({X.name})")
    e0 = SMap(X.truncate(trunc), space, lambda n, x: ((0,) * (n + 1), x), name="e0")
    e1 = SMap(sub2(X, trunc), space, lambda n, y: ((1,) * (n + 1), y), name="e1")
    proj = SMap(space, standard_simplex(1, trunc), lambda n, simplex: simplex[0], name="proj")
    return Cylinder(space, e0, e1, proj)


def end_slice(cyl: Cylinder, value: int) -> SSet:
    """Sub-simplicial set of the cylinder over the constant map at ``value``."""
    return cyl.space.subobject(
        lambda k, simplex: all(v == value for v in simplex[0]), name=f"slice{value}"
    )


def sset_iso(
    X: SSet, Y: SSet, candidate: Optional[SMap] = None, bound: int = 12
) -> Optional[SMap]:
    """
    Find or confirm an isomorphism ``X -> Y``.

    With a candidate, checks levelwise bijectivity onto ``Y`` and
    commutation with faces and degeneracies. Without one, backtracks over
    nondegenerate simplices level by level; degenerate simplices are forced.

    Args:
        bound: Largest number of nondegenerate simplices per level the
            search will branch over

    Returns:
        The isomorphism, or None if there is none

    Raises:
        ValueError: If the truncations differ
        SearchBoundExceeded: If a level has more than ``bound`` nondegenerate simplices
    """
    if X.trunc != Y.trunc:
        raise ValueError(f"truncations differ: {X.trunc} != {Y.trunc}")

    if candidate is not None:
        for k in range(X.trunc + 1):
            images = [candidate(k, x) for x in X.level(k)]
            if len(set(images)) != len(images) or set(images) != set(Y.level(k)):
                return None
        checked = SMap(X, Y, candidate, name=candidate.name)
        return checked if validate_smap(checked).passed else None

    if X.sizes() != Y.sizes():
        return None
    nondeg_x = [X.nondegenerate(k) for k in range(X.trunc + 1)]
    nondeg_y = [Y.nondegenerate(k) for k in range(Y.trunc + 1)]
    for k, (a, b) in enumerate(zip(nondeg_x, nondeg_y)):
        if len(a) > bound or len(b) > bound:
            raise SearchBoundExceeded(
                f"level {k} has {max(len(a), len(b))} nondegenerate simplices, bound is {bound}",
                witness=k,
            )
        if len(a) != len(b):
            return None

    table: Dict[Tuple[int, Label], Label] = {}
    used: List[Set[Label]] = [set() for _ in range(X.trunc + 1)]

    def faces_match(k: int, x: Label, y: Label) -> bool:
        return all(Y.face(y, i, k) == table[(k - 1, X.face(x, i, k))] for i in range(k + 1)) if k else True

    def fill_degenerate(k: int) -> Optional[List[Label]]:
        added = []
        for x in X.level(k):
            if (k, x) in table:
                continue
            j = next(j for j in range(k) if X.degeneracy(X.face(x, j, k), j, k - 1) == x)
            y = Y.degeneracy(table[(k - 1, X.face(x, j, k))], j, k - 1)
            if y in used[k] or not faces_match(k, x, y):
                for z in added:
                    used[k].discard(table.pop((k, z)))
                return None
            table[(k, x)] = y
            used[k].add(y)
            added.append(x)
        return added

    def extend(k: int, position: int) -> bool:
        if k > X.trunc:
            return validate_smap(SMap(X, Y, lambda n, x: table[(n, x)])).passed
        if position == len(nondeg_x[k]):
            added = fill_degenerate(k)
            if added is None:
                return False
            if extend(k + 1, 0):
                return True
            for x in added:
                used[k].discard(table.pop((k, x)))
            return False
        x = nondeg_x[k][position]
        for y in nondeg_y[k]:
            if y in used[k] or not faces_match(k, x, y):
                continue
            table[(k, x)] = y
            used[k].add(y)
            if extend(k, position + 1):
                return True
            del table[(k, x)]
            used[k].discard(y)
        return False

    if not extend(0, 0):
        return None
    found = dict(table)
    return SMap(X, Y, lambda n, x: found[(n, x)], name="iso")
