"""
Calculus of finite nonempty totally ordered sets.

Concatenation ``A*B``, the lexicographic product, the pulled-back order
``phi^-1(s)`` along the fixed surjection ``s: [2] -> [1]`` and the maps
``d``, ``e``, ``i0``, ``i1`` used to build cylinders of simplicial sets.

The pulled-back order is ordered by the ``[2]``-coordinate first and the
``A``-coordinate second. With that order the relabeling onto the three
fibre blocks ``phi^-1(0) * phi^-1(1) * phi^-1(1)`` is an order isomorphism
and every value of ``d`` precedes the matching value of ``e``.
"""
import itertools
from dataclasses import dataclass
from typing import Any, Dict, Hashable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from derivator_combinatorics.errors import OrderError

Label = Hashable


@dataclass(frozen=True)
class TotalOrder:
    """
    A finite nonempty chain; the order is the list order.

    Raises:
        OrderError: If elements is empty or has repeated labels
    """

    elements: Tuple[Label, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        if not self.elements:
            raise OrderError("total orders must be nonempty")
        if len(set(self.elements)) != len(self.elements):
            seen = set()
            for x in self.elements:
                if x in seen:
                    raise OrderError(f"repeated element {x!r}", witness=x)
                seen.add(x)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Label]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self._positions

    @property
    def _positions(self) -> Dict[Label, int]:
        cached = self.__dict__.get("_position_cache")
        if cached is None:
            cached = {x: k for k, x in enumerate(self.elements)}
            object.__setattr__(self, "_position_cache", cached)
        return cached

    def index(self, x: Label) -> int:
        try:
            return self._positions[x]
        except KeyError:
            raise OrderError(f"{x!r} is not an element of the order", witness=x) from None

    def leq(self, x: Label, y: Label) -> bool:
        return self.index(x) <= self.index(y)

    def to_list(self) -> List[Label]:
        return list(self.elements)


@dataclass(frozen=True)
class MonotoneMap:
    """
    An order-preserving map; ``values`` is parallel to ``source.elements``.

    Raises:
        OrderError: If a value is outside the target or the map decreases
    """

    source: TotalOrder
    target: TotalOrder
    values: Tuple[Label, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != len(self.source):
            raise OrderError(
                f"expected {len(self.source)} values, got {len(self.values)}"
            )
        positions = [self.target.index(v) for v in self.values]
        for k in range(1, len(positions)):
            if positions[k - 1] > positions[k]:
                raise OrderError(
                    f"map is not monotone at {self.source.elements[k - 1]!r} "
                    f"< {self.source.elements[k]!r}",
                    witness=(self.source.elements[k - 1], self.source.elements[k]),
                )

    def __call__(self, x: Label) -> Label:
        return self.values[self.source.index(x)]

    def compose(self, first: "MonotoneMap") -> "MonotoneMap":
        """Return ``self∘first``."""
        if first.target != self.source:
            raise OrderError("maps are not composable")
        return MonotoneMap(first.source, self.target, tuple(self(v) for v in first.values))

    def positions(self) -> Tuple[int, ...]:
        """Values as positions in the target."""
        return tuple(self.target.index(v) for v in self.values)

    @classmethod
    def identity(cls, order: TotalOrder) -> "MonotoneMap":
        return cls(order, order, order.elements)


def ordinal(n: int) -> TotalOrder:
    """``[n] = (0 < 1 < ... < n)``."""
    if not isinstance(n, int) or n < 0:
        raise OrderError(f"n must be a non-negative int, got {n!r}")
    return TotalOrder(tuple(range(n + 1)))


def concat(first: TotalOrder, second: TotalOrder) -> TotalOrder:
    """
    ``A*B``: elements ``(0, a)`` followed by ``(1, b)``.

    Example:
        >>> len(concat(ordinal(1), ordinal(2)))
        5
    """
    return concat_many([first, second])


def concat_many(orders: Sequence[TotalOrder]) -> TotalOrder:
    """Iterated concatenation with block tags ``(k, x)``."""
    if not orders:
        raise OrderError("need at least one order to concatenate")
    return TotalOrder(tuple((k, x) for k, order in enumerate(orders) for x in order))


def block_inclusions(order: TotalOrder) -> Tuple[MonotoneMap, MonotoneMap]:
    """The two inclusions ``i0, i1: A -> A*A``, ``a -> (0, a)`` and ``a -> (1, a)``."""
    doubled = concat(order, order)
    return (
        MonotoneMap(order, doubled, tuple((0, a) for a in order)),
        MonotoneMap(order, doubled, tuple((1, a) for a in order)),
    )


def lex(first: TotalOrder, second: TotalOrder) -> TotalOrder:
    """
    Pairs ``(a, b)`` ordered by ``a`` first, then ``b``.

    Example:
        >>> lex(ordinal(1), ordinal(1)).elements
        ((0, 0), (0, 1), (1, 0), (1, 1))
    """
    return TotalOrder(tuple(itertools.product(first.elements, second.elements)))


def canonical_iso(order: TotalOrder) -> MonotoneMap:
    """The unique isomorphism ``A -> [|A|-1]``."""
    return MonotoneMap(order, ordinal(len(order) - 1), tuple(range(len(order))))


def monotone_maps(source: TotalOrder, target: TotalOrder) -> Iterator[MonotoneMap]:
    """All monotone maps ``source -> target`` in lexicographic order of positions."""
    for positions in itertools.combinations_with_replacement(range(len(target)), len(source)):
        yield MonotoneMap(source, target, tuple(target.elements[p] for p in positions))


S_MAP = MonotoneMap(ordinal(2), ordinal(1), (0, 1, 1))
D_MAP = MonotoneMap(ordinal(1), ordinal(2), (0, 1))
E_MAP = MonotoneMap(ordinal(1), ordinal(2), (0, 2))


class Pullback(NamedTuple):
    """
    Result of :func:`grayson_pullback`.

    ``order`` is None exactly when ``empty`` is set; ``coords`` maps each
    element to its ``(a, b)`` coordinates.
    """

    order: Optional[TotalOrder]
    coords: Dict[Label, Tuple[Label, Label]]
    empty: bool


def grayson_pullback(phi: MonotoneMap, s: MonotoneMap = S_MAP) -> Pullback:
    """
    The set ``{(a, b) : phi(a) = s(b)}`` ordered by ``b``, then ``a``.

    Args:
        phi: ``A -> C``
        s: ``B -> C`` (defaults to the surjection ``[2] -> [1]``)

    Raises:
        OrderError: If phi and s have different targets

    Example:
        >>> identity = MonotoneMap.identity(ordinal(1))
        >>> grayson_pullback(identity).order.elements
        ((0, 0), (1, 1), (1, 2))
    """
    if phi.target != s.target:
        raise OrderError("phi and s must share their target")
    A, B = phi.source, s.source
    pairs = [(a, b) for a in A for b in B if phi(a) == s(b)]
    pairs.sort(key=lambda pair: (B.index(pair[1]), A.index(pair[0])))
    if not pairs:
        return Pullback(None, {}, True)
    return Pullback(TotalOrder(tuple(pairs)), {pair: pair for pair in pairs}, False)


def a_primary_pullback(phi: MonotoneMap, s: MonotoneMap = S_MAP) -> Optional[TotalOrder]:
    """The same set ordered as a subset of ``A ⋉ B`` (``a`` first); kept for comparison."""
    pairs = [(a, b) for a in phi.source for b in s.source if phi(a) == s(b)]
    return TotalOrder(tuple(pairs)) if pairs else None


def pullback_order(phi: MonotoneMap) -> TotalOrder:
    """``phi^-1(s)`` for ``phi: A -> [1]``, never empty."""
    result = grayson_pullback(phi)
    assert result.order is not None
    return result.order


@dataclass(frozen=True)
class IntervalData:
    """The maps ``d, e: A -> phi^-1(s)`` with ``d <= e`` and ``i0, i1: A -> A*A``."""

    pullback: TotalOrder
    d: MonotoneMap
    e: MonotoneMap
    zeta: Tuple[Tuple[Label, Label], ...]
    i0: MonotoneMap
    i1: MonotoneMap


def interval_data(phi: MonotoneMap) -> IntervalData:
    """
    Build ``d(a) = (a, d(phi(a)))`` and ``e(a) = (a, e(phi(a)))``.

    Raises:
        OrderError: If phi does not land in ``[1]``, d or e is not
            monotone, or ``d(a) <= e(a)`` fails for some ``a``
    """
    if phi.target != ordinal(1):
        raise OrderError("phi must be a map into [1]")
    pullback = pullback_order(phi)
    A = phi.source
    d = MonotoneMap(A, pullback, tuple((a, D_MAP(phi(a))) for a in A))
    e = MonotoneMap(A, pullback, tuple((a, E_MAP(phi(a))) for a in A))
    zeta = tuple(zip(d.values, e.values))
    for low, high in zeta:
        if not pullback.leq(low, high):
            raise OrderError(f"d value {low!r} exceeds e value {high!r}", witness=(low, high))
    i0, i1 = block_inclusions(A)
    return IntervalData(pullback, d, e, zeta, i0, i1)


def block_decomposition(phi: MonotoneMap) -> MonotoneMap:
    """
    Relabel ``phi^-1(s)`` onto ``phi^-1(0) * phi^-1(1) * phi^-1(1)``.

    The target has elements ``(k, a)`` where block 0 is the fibre over 0
    and blocks 1 and 2 are two copies of the fibre over 1; ``(a, b)`` goes
    to ``(b, a)``. Construction fails with OrderError if the relabeling is
    not monotone, so a returned map is an order isomorphism.
    """
    pullback = pullback_order(phi)
    fibre = {value: [a for a in phi.source if phi(a) == value] for value in (0, 1)}
    blocks = [(0, a) for a in fibre[0]] + [(1, a) for a in fibre[1]] + [(2, a) for a in fibre[1]]
    target = TotalOrder(tuple(blocks))
    return MonotoneMap(pullback, target, tuple((b, a) for a, b in pullback))


def induced_map(psi: MonotoneMap, phi: MonotoneMap) -> MonotoneMap:
    """
    The map ``(phi∘psi)^-1(s) -> phi^-1(s)``, ``(b, k) -> (psi(b), k)``.

    Raises:
        OrderError: If psi and phi are not composable or the map is not monotone
    """
    composite = phi.compose(psi)
    return MonotoneMap(
        pullback_order(composite),
        pullback_order(phi),
        tuple((psi(b), k) for b, k in pullback_order(composite)),
    )


def threshold_maps(n: int) -> List[MonotoneMap]:
    """All ``n + 2`` monotone maps ``[n] -> [1]``, by increasing number of 1s."""
    source, target = ordinal(n), ordinal(1)
    return [
        MonotoneMap(source, target, tuple(1 if i >= cut else 0 for i in source))
        for cut in range(n + 1, -1, -1)
    ]


class SuiteResult(NamedTuple):
    """Cases checked by an exhaustive suite and the first failure, if any."""

    cases: int
    failure: Optional[Dict[str, Any]]

    @property
    def passed(self) -> bool:
        return self.failure is None


def decomposition_suite(max_n: int = 8) -> SuiteResult:
    """Check that :func:`block_decomposition` is an isomorphism for all ``phi: [n] -> [1]``."""
    cases = 0
    for n in range(max_n + 1):
        for phi in threshold_maps(n):
            cases += 1
            try:
                block_decomposition(phi)
            except OrderError as exc:
                return SuiteResult(cases, {"phi": list(phi.values), "error": str(exc)})
    return SuiteResult(cases, None)


def interval_suite(max_n: int = 8) -> SuiteResult:
    """
    Check ``d``, ``e`` for all ``phi: [n] -> [1]``.

    Besides monotonicity and ``d <= e``: ``d = e`` when phi is constant 0,
    and for phi constant 1 the block relabeling carries ``d`` to ``i0`` and
    ``e`` to ``i1``.
    """
    cases = 0
    for n in range(max_n + 1):
        for phi in threshold_maps(n):
            cases += 1
            witness = {"phi": list(phi.values)}
            try:
                data = interval_data(phi)
            except OrderError as exc:
                return SuiteResult(cases, {**witness, "error": str(exc)})
            if all(v == 0 for v in phi.values) and data.d.values != data.e.values:
                return SuiteResult(cases, {**witness, "error": "d != e for phi = 0"})
            if all(v == 1 for v in phi.values):
                relabel = {(a, b): (b - 1, a) for a, b in data.pullback}
                if tuple(relabel[v] for v in data.d.values) != data.i0.values:
                    return SuiteResult(cases, {**witness, "error": "d does not match i0"})
                if tuple(relabel[v] for v in data.e.values) != data.i1.values:
                    return SuiteResult(cases, {**witness, "error": "e does not match i1"})
                if max(data.pullback.index(v) for v in data.d.values) >= min(
                    data.pullback.index(v) for v in data.e.values
                ):
                    return SuiteResult(cases, {**witness, "error": "d and e interleave"})
    return SuiteResult(cases, None)


def functoriality_suite(max_size: int = 5) -> SuiteResult:
    """
    Check the induced maps ``psi'`` for ``|A|, |B| <= max_size``.

    ``psi'`` must be monotone and satisfy ``d_A∘psi = psi'∘d_B`` and
    ``e_A∘psi = psi'∘e_B``.
    """
    cases = 0
    for size_a in range(1, max_size + 1):
        A = ordinal(size_a - 1)
        for phi in threshold_maps(size_a - 1):
            data_a = interval_data(phi)
            for size_b in range(1, max_size + 1):
                B = ordinal(size_b - 1)
                for psi in monotone_maps(B, A):
                    cases += 1
                    witness = {"phi": list(phi.values), "psi": list(psi.values)}
                    try:
                        lifted = induced_map(psi, phi)
                        data_b = interval_data(phi.compose(psi))
                    except OrderError as exc:
                        return SuiteResult(cases, {**witness, "error": str(exc)})
                    for label, map_a, map_b in (
                        ("d", data_a.d, data_b.d),
                        ("e", data_a.e, data_b.e),
                    ):
                        if map_a.compose(psi).values != lifted.compose(map_b).values:
                            return SuiteResult(
                                cases, {**witness, "error": f"{label} does not commute with psi'"}
                            )
    return SuiteResult(cases, None)
