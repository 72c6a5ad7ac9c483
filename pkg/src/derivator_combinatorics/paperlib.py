"""
Named index categories and functors of the additivity argument.

Each construction is built from its case formula and bundled with
the checks that certify it: functoriality, sieve/cosieve classification,
adjunctions and spot values. The result is a :class:`NamedConstruction`
whose checks become corpus claims ``<name>.<check>``.
"""
import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Hashable, List, Mapping, NamedTuple, Optional, Tuple, Union

from derivator_combinatorics.fincat import (
    FinCat,
    Functor,
    arrow_category,
    check_adjunction,
    check_functor,
    classify_inclusion,
    comma,
    coproduct,
    corner,
    full_subcategory,
    image_closure,
    inclusion,
    ordinal_category,
    poset_functor,
    product,
    square,
    terminal,
    build_poset,
)

Label = Hashable


@dataclass(frozen=True)
class Check:
    """One verified statement; ``witness`` explains a failure."""

    name: str
    passed: bool
    witness: Any = None
    location: str = ""


@dataclass(frozen=True)
class NamedConstruction:
    """A bundle of categories/functors and the checks run on them."""

    name: str
    checks: Tuple[Check, ...]
    payload: Dict[str, Any] = field(default_factory=dict, compare=False, repr=False)

    @property
    def verdict(self) -> str:
        return "pass" if all(check.passed for check in self.checks) else "fail"

    @property
    def witness(self) -> Any:
        for check in self.checks:
            if not check.passed:
                return {"check": check.name, "witness": check.witness}
        return None

    def check(self, name: str) -> Check:
        for item in self.checks:
            if item.name == name:
                return item
        raise KeyError(name)

    def claim_ids(self) -> List[str]:
        return [f"{self.name}.{check.name}" for check in self.checks]


def _flags_check(name: str, functor: Functor, flag: str, location: str) -> Check:
    flags = classify_inclusion(functor)
    return Check(name, getattr(flags, flag), None if getattr(flags, flag) else flags.to_dict(), location)


def _functor_check(name: str, functor: Functor, location: str) -> Check:
    broken = check_functor(functor)
    return Check(name, broken is None, broken, location)


def sigma_chain() -> NamedConstruction:
    """
    The inclusion chain ``e⊔e -> ⌐ -> □ -> J -> [1]x[2]`` and ``r: □ -> [1]x[2]``.

    ``i`` hits ``(1,0)`` and ``(0,1)``; ``J`` is ``[1]x[2]`` without
    ``(1,2)``; ``r`` is the bottom square ``(a, b) -> (a, b+1)``.
    Checks: ``i`` is a cosieve; ``i_corner``, ``i_square`` and ``j`` are
    sieves; ``r`` is fully faithful with the expected image.
    """
    location = "sigma pipeline: inclusion chain e⊔e -> ⌐ -> □ -> J -> [1]x[2]"
    pair = coproduct(terminal(), terminal())
    sq, cor = square(), corner()
    grid = product(ordinal_category(1), ordinal_category(2))
    J = full_subcategory(grid, [x for x in grid.objects if x != (1, 2)])

    i = poset_functor(pair, cor, {(0, "*"): (1, 0), (1, "*"): (0, 1)}, name="i")
    i_corner = inclusion(cor, sq, name="i_corner")
    i_square = poset_functor(sq, J, lambda x: x, name="i_square")
    j = inclusion(J, grid, name="j")
    r = poset_functor(sq, grid, lambda x: (x[0], x[1] + 1), name="r")

    r_flags = classify_inclusion(r)
    r_image = set(r.image())
    expected_image = {(0, 1), (1, 1), (0, 2), (1, 2)}
    r_ok = r_flags.fully_faithful and r_image == expected_image
    checks = (
        _flags_check("i-cosieve", i, "cosieve", location),
        _flags_check("i-corner-sieve", i_corner, "sieve", location),
        _flags_check("i-square-sieve", i_square, "sieve", location),
        _flags_check("j-sieve", j, "sieve", location),
        Check(
            "r-fully-faithful",
            r_ok,
            None if r_ok else {"flags": r_flags.to_dict(), "image": sorted(r_image)},
            location,
        ),
    )
    payload = {"i": i, "i_corner": i_corner, "i_square": i_square, "j": j, "r": r, "J": J, "grid": grid}
    return NamedConstruction("sigma-chain", checks, payload)


def inclusion_claims() -> NamedConstruction:
    """
    Stand-alone inclusions: ``i_[1]: [1] -> ⌐`` onto ``(0,0) -> (1,0)`` is a
    sieve, ``t: e -> [1]`` at the target is a cosieve, and ``s: [1] -> Ar[1]``
    onto ``(0,0) -> (0,1)`` is a sieve.
    """
    one = ordinal_category(1)
    i_one = poset_functor(one, corner(), {0: (0, 0), 1: (1, 0)}, name="i_[1]")
    t = poset_functor(terminal(), one, {"*": 1}, name="t")
    s = poset_functor(one, arrow_category(one), {0: (0, 0), 1: (0, 1)}, name="s")
    checks = (
        _flags_check("i-one-sieve", i_one, "sieve", "corner inclusion of the arrow (0,0) -> (1,0)"),
        _flags_check("t-cosieve", t, "cosieve", "inclusion of the target into [1]"),
        _flags_check("s-sieve", s, "sieve", "inclusion [1] -> Ar[1] onto (0,0) -> (0,1)"),
    )
    return NamedConstruction("inclusions", checks, {"i_[1]": i_one, "t": t, "s": s})


_XI_ZERO = {(0, 0, 0, 0), (0, 0, 1, 0), (1, 0, 0, 0)}
_XI_TOP = {(1, 0, 1, 1), (1, 1, 1, 0), (1, 1, 1, 1)}


def xi_value(a1: int, b1: int, a2: int, b2: int) -> Tuple[int, int]:
    """Case formula of the cofiber-square functor."""
    key = (a1, b1, a2, b2)
    if key in _XI_ZERO:
        return (0, 0)
    if key == (1, 0, 1, 0):
        return (1, 0)
    if key in _XI_TOP:
        return (1, 1)
    return (0, 1)


def cofiber_square_functor() -> Functor:
    """``xi: □x□ -> □`` on objects ``((a1, b1), (a2, b2))``."""
    sq = square()
    return poset_functor(
        product(sq, sq), sq, lambda x: xi_value(x[0][0], x[0][1], x[1][0], x[1][1]), name="xi"
    )


XI_SPOT_VALUES = {
    (0, 0, 0, 0): (0, 0),
    (0, 0, 1, 0): (0, 0),
    (1, 0, 0, 0): (0, 0),
    (1, 0, 1, 0): (1, 0),
    (1, 0, 1, 1): (1, 1),
    (1, 1, 1, 0): (1, 1),
    (1, 1, 1, 1): (1, 1),
    (0, 1, 1, 1): (0, 1),
}


def cofiber_square() -> NamedConstruction:
    """``xi`` with its functoriality, spot values and the worked arrow example."""
    location = "cofiber sequence functor xi: □x□ -> □"
    xi = cofiber_square_functor()
    wrong = {
        key: xi(((key[0], key[1]), (key[2], key[3])))
        for key, expected in XI_SPOT_VALUES.items()
        if xi(((key[0], key[1]), (key[2], key[3]))) != expected
    }
    arrow = (((1, 0), (0, 0)), ((1, 0), (1, 0)), 0)
    image = xi.fmap(arrow) if check_functor(xi) is None else None
    arrow_ok = image == ((0, 0), (1, 0), 0)
    checks = (
        _functor_check("functor", xi, location),
        Check("spot-values", not wrong, {str(k): v for k, v in wrong.items()} or None, location),
        Check("arrow-example", arrow_ok, None if arrow_ok else image, location),
    )
    return NamedConstruction("cofiber-square", checks, {"xi": xi})


def _arrows(n: int) -> FinCat:
    return arrow_category(ordinal_category(n))


def sdot_functors(n: int) -> NamedConstruction:
    """
    Indexing functors of the simplicial structure on ``S_n``.

    ``j: [n-1] -> Ar[n]``, ``i -> (0, i+1)`` is fully faithful;
    ``i0: [n-1] -> [n]``, ``i -> i+1`` is a cosieve; ``D`` is the top row plus
    the diagonal of ``Ar[n]``; ``i1: [n] -> D`` onto the top row is a sieve
    and ``i2: D -> Ar[n]`` is fully faithful.

    Raises:
        ValueError: If n < 1
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be an int >= 1, got {n!r}")
    location = f"simplicial structure of S_n, n={n}"
    ar = _arrows(n)
    before, ordinal_n = ordinal_category(n - 1), ordinal_category(n)
    D = full_subcategory(ar, [x for x in ar.objects if x[0] == 0 or x[0] == x[1]])

    j_top = poset_functor(before, ar, lambda i: (0, i + 1), name="j")
    i0 = poset_functor(before, ordinal_n, lambda i: i + 1, name="i0")
    i1 = poset_functor(ordinal_n, D, lambda i: (0, i), name="i1")
    i2 = inclusion(D, ar, name="i2")

    expected = 2 * n + 1
    checks = (
        _flags_check("j-fully-faithful", j_top, "fully_faithful", location),
        _flags_check("i0-cosieve", i0, "cosieve", location),
        _flags_check("i1-sieve", i1, "sieve", location),
        _flags_check("i2-fully-faithful", i2, "fully_faithful", location),
        Check("d-objects", len(D) == expected, None if len(D) == expected else list(D.objects), location),
    )
    return NamedConstruction(
        f"sdot.n{n}", checks, {"D": D, "j": j_top, "i0": i0, "i1": i1, "i2": i2}
    )


def detection_iota(n: int, i: int, j: int) -> Functor:
    """``iota_{i,j}: □ -> Ar[n]``, ``(a, b) -> (i+b, j+a)``."""
    return poset_functor(square(), _arrows(n), lambda x: (i + x[1], j + x[0]), name=f"iota_{i},{j}")


def detection_ell(i: int, j: int) -> Callable[[Tuple[int, int]], Tuple[int, int]]:
    """
    Left adjoint ``B^{i,j} -> ⌐`` matching ``iota_{i,j}``.

    ``(0,0)`` below the corner, ``(1,0)`` on the column ``q = j+1`` and
    ``(0,1)`` on the row ``p = i+1``.
    """

    def ell(x: Tuple[int, int]) -> Tuple[int, int]:
        p, q = x
        if q == j + 1:
            return (1, 0)
        if p == i + 1:
            return (0, 1)
        return (0, 0)

    return ell


def swapped_detection_ell(i: int, j: int) -> Dict[Tuple[int, int], Tuple[int, int]]:
    """
    The case table with the ``(0,1)`` and ``(1,0)`` labels swapped.

    It ignores the coordinate flip in ``iota_{i,j}`` and fails the hom
    criterion; used to exercise failing corpus claims.
    """
    table = {}
    for p in range(i + 2):
        for q in range(p, j + 2):
            if (p, q) == (i + 1, j + 1):
                continue
            if q == j + 1:
                table[(p, q)] = (0, 1)
            elif p == i + 1:
                table[(p, q)] = (1, 0)
            else:
                table[(p, q)] = (0, 0)
    return table


def detection(
    n: int,
    i: int,
    j: int,
    ell: Optional[Union[Mapping[Label, Label], Callable[[Label], Label]]] = None,
) -> NamedConstruction:
    """
    The detection category ``B^{i,j}`` with ``ell ⊣ iota-bar``.

    Args:
        n: Size of ``Ar[n]``
        i: Row of the unit square
        j: Column of the unit square
        ell: Optional replacement for the left adjoint (table or callable)

    Raises:
        ValueError: Unless ``0 <= i < j <= n-1``

    Example:
        >>> detection(3, 0, 1).verdict
        'pass'
    """
    if not (isinstance(n, int) and isinstance(i, int) and isinstance(j, int)):
        raise TypeError("n, i and j must be ints")
    if not 0 <= i < j <= n - 1:
        raise ValueError(f"need 0 <= i < j <= n-1, got n={n}, i={i}, j={j}")
    location = f"detection category B^{{{i},{j}}} in Ar[{n}]"
    ar = _arrows(n)
    iota = detection_iota(n, i, j)
    corner_image = iota((1, 1))
    B = full_subcategory(
        ar, [x for x in ar.objects if x[0] <= i + 1 and x[1] <= j + 1 and x != corner_image]
    )
    cor = corner()
    iota_bar = poset_functor(cor, B, iota, name="iota-bar")
    left = poset_functor(B, cor, ell if ell is not None else detection_ell(i, j), name="ell")

    report = check_adjunction(left, iota_bar)
    unit_unique = report.passed and all(
        len(B.hom(x, iota_bar(left(x)))) == 1 for x in B.objects
    )
    counit_identity = all(left(iota_bar(x)) == x for x in cor.objects)
    top_row = {(0, k + 1) for k in range(n)}
    checks = (
        _flags_check("iota-fully-faithful", iota, "fully_faithful", location),
        Check("adjunction", report.passed, report.witness, location),
        Check("unit-unique", unit_unique, None if unit_unique else "unit is not the unique map", location),
        Check(
            "counit-identity",
            counit_identity,
            None if counit_identity else {str(x): left(iota_bar(x)) for x in cor.objects},
            location,
        ),
        Check(
            "corner-outside-image",
            corner_image not in top_row,
            None if corner_image not in top_row else corner_image,
            location,
        ),
    )
    return NamedConstruction(
        f"detection.n{n}.i{i}j{j}",
        checks,
        {"B": B, "iota": iota, "iota_bar": iota_bar, "ell": left, "report": report},
    )


def p_value(i: int, j: int, a: int, b: int) -> Tuple[int, int]:
    """``p_n(i, j, a, b)``: ``(i, j)`` when ``a = 1``, otherwise ``(0, 0)``."""
    return (i, j) if a == 1 else (0, 0)


def q_value(i: int, j: int, a: int, b: int) -> Tuple[int, int]:
    """``q_n(i, j, a, b)`` by its four cases on ``(a, b)``."""
    if (a, b) == (1, 0):
        return (i, j)
    if (a, b) == (0, 1):
        return (1, 1)
    if (a, b) == (0, 0):
        if (i, j) == (0, 0):
            return (0, 0)
        if i in (0, 1) and j >= 1:
            return (0, 1)
        return (1, 1)
    if (i, j) == (0, 0):
        return (1, 1)
    if i == 0 and j >= 1:
        return (1, j)
    return (i, j)


P_SPOT_VALUES = {(1, 2, 1, 1): (1, 2), (0, 2, 0, 0): (0, 0), (1, 2, 0, 1): (0, 0)}
Q_SPOT_VALUES = {
    (0, 0, 0, 0): (0, 0),
    (0, 2, 0, 0): (0, 1),
    (2, 2, 0, 0): (1, 1),
    (0, 0, 1, 1): (1, 1),
    (0, 2, 1, 1): (1, 2),
    (1, 2, 1, 1): (1, 2),
}


def relative_functors(n: int) -> NamedConstruction:
    """
    ``p_n: Ar[n] x □ -> Ar[n]`` and ``q_n: Ar[n+1] x □ -> Ar[n+1]``.

    Raises:
        ValueError: If n < 1
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be an int >= 1, got {n!r}")
    location = f"relative S-construction functors p_n, q_n, n={n}"
    sq = square()
    ar_n, ar_next = _arrows(n), _arrows(n + 1)
    p = poset_functor(product(ar_n, sq), ar_n, lambda x: p_value(*x[0], *x[1]), name=f"p_{n}")
    q = poset_functor(
        product(ar_next, sq), ar_next, lambda x: q_value(*x[0], *x[1]), name=f"q_{n}"
    )

    def spot(functor: Functor, values: Dict[Tuple[int, ...], Tuple[int, int]], ar: FinCat) -> Dict[str, Any]:
        wrong = {}
        for (i, j, a, b), expected in values.items():
            if (i, j) in ar:
                got = functor(((i, j), (a, b)))
                if got != expected:
                    wrong[str((i, j, a, b))] = got
        return wrong

    wrong = {**spot(p, P_SPOT_VALUES, ar_n), **spot(q, Q_SPOT_VALUES, ar_next)}
    checks = (
        _functor_check("p-functor", p, location),
        _functor_check("q-functor", q, location),
        Check("spot-values", not wrong, wrong or None, location),
    )
    tables = {
        "p": {str(x): p(x) for x in p.source.objects},
        "q": {str(x): q(x) for x in q.source.objects},
    }
    return NamedConstruction(f"relative.n{n}", checks, {"p": p, "q": q, "tables": tables})


def swindle_category(N: int) -> NamedConstruction:
    """
    Truncated swindle category ``Gamma_s`` and its reflective subcategory.

    Objects ``(m, 0)`` for ``m <= N`` and ``(n, 1)`` for ``n <= N+1`` with
    arrows ``(m, 0) -> (m+1, 1)``. Checks: ``p`` is a functor; ``(p/0)`` is
    discrete on the ``(m, 0)``; ``(p/1)`` projects isomorphically onto
    ``Gamma_s``; ``ell ⊣ r`` for the bottom row; the embedding into the
    truncated ``omega x [1]`` is injective with an upward-closed image.

    Raises:
        ValueError: If N < 1
    """
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"N must be an int >= 1, got {N!r}")
    location = f"swindle category Gamma_s truncated at N={N}"
    gamma = build_poset(
        [(m, 0) for m in range(N + 1)] + [(n, 1) for n in range(N + 2)],
        [((m, 0), (m + 1, 1)) for m in range(N + 1)],
    )
    one = ordinal_category(1)
    p = poset_functor(gamma, one, lambda x: x[1], name="p")
    over_zero = comma(p, 0)
    over_one = comma(p, 1)
    omega_1 = full_subcategory(gamma, [(n, 1) for n in range(N + 2)])
    r = inclusion(omega_1, gamma, name="r")
    ell = poset_functor(gamma, omega_1, lambda x: x if x[1] == 1 else (x[0] + 1, 1), name="ell")

    zero_cat = over_zero.category
    zero_objects = sorted(over_zero.projection(x) for x in zero_cat.objects)
    zero_ok = (
        zero_cat.num_morphisms() == len(zero_cat)
        and zero_objects == [(m, 0) for m in range(N + 1)]
    )
    one_flags = classify_inclusion(over_one.projection)
    one_ok = (
        one_flags.fully_faithful
        and one_flags.injective_on_objects
        and len(over_one.category) == len(gamma)
    )
    adjunction = check_adjunction(ell, r)

    omega = build_poset(range(N + 2), [(k, k + 1) for k in range(N + 1)])
    grid = product(omega, one)
    embed = poset_functor(
        gamma, grid, lambda x: (x[0] + 1, 0) if x[1] == 0 else (x[0], 1), name="i"
    )
    embed_flags = classify_inclusion(embed)
    upward = image_closure(embed)[1]
    embed_ok = check_functor(embed) is None and embed_flags.injective_on_objects and upward

    checks = (
        _functor_check("p-functor", p, location),
        Check("comma0-discrete", zero_ok, None if zero_ok else zero_objects, location),
        Check("comma1-is-gamma", one_ok, None if one_ok else one_flags.to_dict(), location),
        Check("ell-adjunction", adjunction.passed, adjunction.witness, location),
        Check(
            "omega-image-upward-closed",
            embed_ok,
            None if embed_ok else {**embed_flags.to_dict(), "upward_closed": upward},
            location,
        ),
    )
    payload = {
        "gamma": gamma,
        "p": p,
        "comma0": over_zero,
        "comma1": over_one,
        "omega_1": omega_1,
        "r": r,
        "ell": ell,
        "embedding": embed,
        "embedding_flags": embed_flags,
    }
    return NamedConstruction(f"swindle.N{N}", checks, payload)


Corners = Tuple[int, int, int, int]


class Squares(NamedTuple):
    """Result of :func:`sdot_squares`."""

    rectangles: List[Functor]
    diagonal_anchored: List[Functor]


def rectangle_functor(n: int, corners: Corners, target: Optional[FinCat] = None) -> Functor:
    """``(0,0) -> (i,j)``, ``(1,0) -> (i,j')``, ``(0,1) -> (i',j)``, ``(1,1) -> (i',j')``."""
    i, i2, j, j2 = corners
    return poset_functor(
        square(),
        target if target is not None else _arrows(n),
        {(0, 0): (i, j), (1, 0): (i, j2), (0, 1): (i2, j), (1, 1): (i2, j2)},
        name=f"rect{corners}",
    )


def rectangle_corners(n: int) -> List[Corners]:
    """All ``(i, i', j, j')`` with ``i < i' <= j < j' <= n``."""
    return [
        (i, i2, j, j2)
        for i, i2, j, j2 in itertools.combinations_with_replacement(range(n + 1), 4)
        if i < i2 <= j < j2
    ]


def sdot_squares(n: int) -> Squares:
    """
    Fully faithful rectangles ``□ -> Ar[n]`` and the diagonal-anchored ones.

    A rectangle is diagonal-anchored when ``(0,1)`` lands on the diagonal.

    Raises:
        ValueError: If n < 2

    Example:
        >>> [len(part) for part in sdot_squares(3)]
        [5, 4]
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"n must be an int >= 2, got {n!r}")
    target = _arrows(n)
    rectangles = [rectangle_functor(n, c, target) for c in rectangle_corners(n)]
    anchored = [f for f in rectangles if f((0, 1))[0] == f((0, 1))[1]]
    return Squares(rectangles, anchored)


def brute_force_rectangles(n: int) -> List[Corners]:
    """
    Rectangles found by enumerating every injective monotone object map ``□ -> Ar[n]``.

    Keeps order embeddings whose image is an axis-aligned rectangle with
    ``(0,1)`` on the lower-left corner.
    """
    ar = _arrows(n)
    sq = square()
    found = []
    for a in ar.objects:
        for b in ar.successors(a):
            for c in ar.successors(a):
                for d in set(ar.successors(b)) & set(ar.successors(c)):
                    values = {(0, 0): a, (1, 0): b, (0, 1): c, (1, 1): d}
                    if len(set(values.values())) != 4:
                        continue
                    embedding = all(
                        sq.leq(x, y) == ar.leq(values[x], values[y])
                        for x in sq.objects
                        for y in sq.objects
                    )
                    rectangle = a[0] == b[0] and c[0] == d[0] and a[1] == c[1] and b[1] == d[1]
                    if embedding and rectangle and c[0] > a[0] and b[1] > a[1]:
                        found.append((a[0], c[0], a[1], b[1]))
    return sorted(found)


def pasting_closure(n: int) -> Optional[Tuple[Corners, Corners]]:
    """Return two adjacent rectangles whose union is not enumerated, or None."""
    corners = set(rectangle_corners(n))
    for first in corners:
        for second in corners:
            i, i2, j, j2 = first
            k, k2, l, l2 = second
            if (i, i2) == (k, k2) and j2 == l and (i, i2, j, l2) not in corners:
                return (first, second)
            if (j, j2) == (l, l2) and i2 == k and (i, k2, j, j2) not in corners:
                return (first, second)
    return None


def squares_construction(n: int) -> NamedConstruction:
    """Checks on :func:`sdot_squares` for the corpus."""
    location = f"cocartesian square conditions of S_n, n={n}"
    result = sdot_squares(n)
    corners = [
        (f((0, 0))[0], f((0, 1))[0], f((0, 0))[1], f((1, 0))[1]) for f in result.rectangles
    ]
    brute = brute_force_rectangles(n)
    unit = [(i, i + 1, j, j + 1) for i in range(n) for j in range(i + 1, n)]
    missing_unit = [c for c in unit if c not in corners]
    not_ff = [f.name for f in result.rectangles if not classify_inclusion(f).fully_faithful]
    pasting = pasting_closure(n)
    counts = (len(result.rectangles), len(result.diagonal_anchored))
    checks = (
        Check("fully-faithful", not not_ff, not_ff or None, location),
        Check(
            "brute-force-agrees",
            sorted(corners) == brute,
            None if sorted(corners) == brute else {"enumerated": sorted(corners), "brute": brute},
            location,
        ),
        Check("detection-squares-included", not missing_unit, missing_unit or None, location),
        Check("pasting-closed", pasting is None, pasting, location),
    )
    return NamedConstruction(f"squares.n{n}", checks, {"squares": result, "counts": counts})
