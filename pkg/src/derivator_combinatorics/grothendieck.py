"""
Grothendieck groups of cofiber-sequence presentations.

The group is the cokernel of the relation matrix (relations are rows,
generators are columns), read off a Smith normal form computed with
exact Python integers.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, List, Mapping, Sequence, Tuple

import sympy

from derivator_combinatorics.errors import FormatError

logger = logging.getLogger(__name__)

Matrix = List[List[int]]


def _identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(left: Sequence[Sequence[int]], right: Sequence[Sequence[int]]) -> Matrix:
    """Exact integer matrix product."""
    if not left:
        return []
    inner = len(right)
    columns = len(right[0]) if right else 0
    return [
        [sum(row[t] * right[t][j] for t in range(inner)) for j in range(columns)]
        for row in left
    ]


def is_unimodular(matrix: Sequence[Sequence[int]]) -> bool:
    """True for a square integer matrix with determinant ±1 (empty counts)."""
    if not matrix:
        return True
    return abs(sympy.Matrix(matrix).det()) == 1


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix, Matrix]:
    """
    Smith normal form ``S = U·M·V``.

    Pivots are the smallest nonzero absolute value in the remaining block,
    ties broken by row-major position. Entries below and right of a pivot
    are reduced by floor division; a pivot that does not divide the rest
    of the block pulls in the offending row and reduction repeats.

    Args:
        matrix: Rectangular integer matrix (list of rows)

    Returns:
        ``(U, S, V)`` with ``U``, ``V`` unimodular and ``S`` diagonal,
        ``d_i >= 0`` and ``d_i | d_{i+1}``

    Raises:
        ValueError: If rows have different lengths

    Example:
        >>> smith_normal_form([[2, 0], [0, 3]])[1]
        [[1, 0], [0, 6]]
    """
    A: Matrix = [[int(v) for v in row] for row in matrix]
    rows = len(A)
    columns = len(A[0]) if rows else 0
    if any(len(row) != columns for row in A):
        raise ValueError("matrix rows must all have the same length")
    U = _identity(rows)
    V = _identity(columns)

    def swap_rows(i: int, j: int) -> None:
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_columns(i: int, j: int) -> None:
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(target: int, source: int, factor: int) -> None:
        A[target] = [a + factor * b for a, b in zip(A[target], A[source])]
        U[target] = [a + factor * b for a, b in zip(U[target], U[source])]

    def add_column(target: int, source: int, factor: int) -> None:
        for row in A:
            row[target] += factor * row[source]
        for row in V:
            row[target] += factor * row[source]

    def pick_pivot(t: int) -> bool:
        best = None
        for i in range(t, rows):
            for j in range(t, columns):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            return False
        swap_rows(t, best[0])
        swap_columns(t, best[1])
        return True

    pivots = 0
    for t in range(min(rows, columns)):
        if not pick_pivot(t):
            break
        while True:
            pivots += 1
            p = A[t][t]
            for i in range(t + 1, rows):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, columns):
                if A[t][j]:
                    add_column(j, t, -(A[t][j] // p))
            if any(A[i][t] for i in range(t + 1, rows)) or any(
                A[t][j] for j in range(t + 1, columns)
            ):
                # a remainder is smaller than p
                pick_pivot(t)
                continue
            # p must divide every entry of the remaining block
            offending = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, columns) if A[i][j] % p),
                None,
            )
            if offending is None:
                break
            add_row(t, offending, 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
    logger.debug("smith normal form of %dx%d matrix: %d pivot steps", rows, columns, pivots)
    return U, A, V


def diagonal(matrix: Sequence[Sequence[int]]) -> List[int]:
    return [matrix[i][i] for i in range(min(len(matrix), len(matrix[0]) if matrix else 0))]


@dataclass(frozen=True)
class K0Presentation:
    """
    Generators with cofiber, isomorphism and zero relations.

    ``cofiber`` triples ``(a, b, c)`` mean ``[b] = [a] + [c]``; ``iso`` pairs
    ``(x, y)`` mean ``[x] = [y]``; ``zero`` labels ``z`` mean ``[z] = 0``.

    Raises:
        ValueError: If a relation uses a label that is not a generator
    """

    generators: Tuple[Hashable, ...]
    cofiber: Tuple[Tuple[Hashable, Hashable, Hashable], ...] = ()
    iso: Tuple[Tuple[Hashable, Hashable], ...] = ()
    zero: Tuple[Hashable, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "cofiber", tuple(tuple(r) for r in self.cofiber))
        object.__setattr__(self, "iso", tuple(tuple(r) for r in self.iso))
        object.__setattr__(self, "zero", tuple(self.zero))
        known = set(self.generators)
        if len(known) != len(self.generators):
            raise ValueError("generators must be distinct")
        for relation in self.cofiber + self.iso + tuple((z,) for z in self.zero):
            for label in relation:
                if label not in known:
                    raise ValueError(f"relation {relation!r} uses unknown generator {label!r}")
        for relation in self.cofiber:
            if len(relation) != 3:
                raise ValueError(f"cofiber relations need three labels, got {relation!r}")
        for relation in self.iso:
            if len(relation) != 2:
                raise ValueError(f"iso relations need two labels, got {relation!r}")

    def relation_matrix(self) -> Matrix:
        """One row per relation, one column per generator."""
        column = {g: k for k, g in enumerate(self.generators)}
        rows: Matrix = []

        def row(*terms: Tuple[Hashable, int]) -> List[int]:
            values = [0] * len(self.generators)
            for label, coefficient in terms:
                values[column[label]] += coefficient
            return values

        for a, b, c in self.cofiber:
            rows.append(row((b, 1), (a, -1), (c, -1)))
        for x, y in self.iso:
            rows.append(row((x, 1), (y, -1)))
        for z in self.zero:
            rows.append(row((z, 1)))
        return rows

    def to_json(self) -> Dict[str, Any]:
        return {
            "generators": list(self.generators),
            "cofiber": [list(r) for r in self.cofiber],
            "iso": [list(r) for r in self.iso],
            "zero": list(self.zero),
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "K0Presentation":
        """
        Read ``{"generators": [...], "cofiber": [...], "iso": [...], "zero": [...]}``.

        Raises:
            FormatError: If the layout is wrong or a relation is invalid
        """
        from derivator_combinatorics.serialization import freeze

        if not isinstance(data, Mapping) or "generators" not in data:
            raise FormatError("presentation needs a 'generators' list")
        try:
            return cls(
                generators=freeze(data["generators"]),
                cofiber=freeze(data.get("cofiber", [])),
                iso=freeze(data.get("iso", [])),
                zero=freeze(data.get("zero", [])),
            )
        except (TypeError, ValueError) as exc:
            raise FormatError(f"invalid presentation: {exc}") from exc


@dataclass(frozen=True)
class AbelianGroup:
    """
    ``Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_t`` with ``d_1 | ... | d_t``, ``d_i >= 2``.

    ``classes`` sends each generator to its coordinates: torsion
    coordinates first (reduced mod ``d_i``), then free coordinates.
    """

    rank: int
    torsion: Tuple[int, ...]
    classes: Dict[Hashable, Tuple[int, ...]] = field(default_factory=dict)

    def reduce(self, vector: Sequence[int]) -> Tuple[int, ...]:
        t = len(self.torsion)
        return tuple(v % d for v, d in zip(vector[:t], self.torsion)) + tuple(vector[t:])

    def add(self, left: Sequence[int], right: Sequence[int]) -> Tuple[int, ...]:
        return self.reduce([a + b for a, b in zip(left, right)])

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def describe(self) -> str:
        """Human-readable form, e.g. ``Z^2 + Z/2``."""
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> Dict[str, Any]:
        return {
            "rank": self.rank,
            "torsion": list(self.torsion),
            "classes": {_key(g): list(v) for g, v in self.classes.items()},
        }


def _key(label: Hashable) -> str:
    return label if isinstance(label, str) else repr(label)


def k0_group(presentation: K0Presentation) -> AbelianGroup:
    """
    Compute the Grothendieck group of a presentation.

    Generator ``i`` maps to row ``i`` of ``V`` in ``S = U·M·V``; coordinates
    with invariant factor 1 are dropped, those with factor ``d > 1`` are
    reduced mod ``d`` and the rest are free.

    Example:
        >>> k0_group(K0Presentation(("x",), cofiber=(("x", "x", "x"),))).is_trivial()
        True
    """
    generators = presentation.generators
    M = presentation.relation_matrix()
    n = len(generators)
    if M:
        _, S, V = smith_normal_form(M)
        factors = diagonal(S)
    else:
        V, factors = _identity(n), []
    factors = factors + [0] * (n - len(factors))

    torsion_columns = [j for j, d in enumerate(factors) if d > 1]
    free_columns = [j for j, d in enumerate(factors) if d == 0]
    torsion = tuple(factors[j] for j in torsion_columns)
    classes = {}
    for i, g in enumerate(generators):
        classes[g] = tuple(V[i][j] % factors[j] for j in torsion_columns) + tuple(
            V[i][j] for j in free_columns
        )
    group = AbelianGroup(rank=len(free_columns), torsion=torsion, classes=classes)
    logger.debug("K0 of %d generators, %d relations: %s", n, len(M), group.describe())
    return group


def check_classes(group: AbelianGroup, presentation: K0Presentation) -> List[Tuple[Any, ...]]:
    """Return every relation the class map violates (empty when all hold)."""
    width = len(group.torsion) + group.rank
    zero = (0,) * width
    classes = group.classes
    broken: List[Tuple[Any, ...]] = []
    for a, b, c in presentation.cofiber:
        if group.reduce(classes[b]) != group.add(classes[a], classes[c]):
            broken.append(("cofiber", a, b, c))
    for x, y in presentation.iso:
        if group.reduce(classes[x]) != group.reduce(classes[y]):
            broken.append(("iso", x, y))
    for z in presentation.zero:
        if group.reduce(classes[z]) != zero:
            broken.append(("zero", z))
    return broken


def presentation_matrix(presentation: K0Presentation) -> Matrix:
    """Relation matrix of a presentation; rows are relations, columns generators."""
    return presentation.relation_matrix()
