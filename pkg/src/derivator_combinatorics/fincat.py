"""
Finite categories, functors and natural transformations.

A category is stored as explicit hom-sets plus a composition table.
Thin categories (every hom-set has at most one element) skip the table:
the composite of two arrows is the unique arrow between the outer objects.
All index categories built in this package are finite posets and use the
thin representation; the table is there for non-poset counterexamples.

Morphism ids are canonical triples ``(source, target, index)``. The
identity of ``x`` is always ``(x, x, 0)`` and thin categories only ever
use index 0.
"""
import itertools
from dataclasses import dataclass, field
from typing import (
    Any,
    Callable,
    Dict,
    Hashable,
    Iterable,
    Iterator,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import networkx as nx

from derivator_combinatorics.errors import CategoryLawError, FunctorError, NotAPosetError

Label = Hashable
MorId = Tuple[Any, Any, int]
HomTable = Dict[Tuple[Label, Label], Tuple[MorId, ...]]


class FinCat:
    """
    A finite category with canonical morphism ids.

    Use :func:`build_poset`, :func:`build_fincat` or one of the
    constructors below rather than calling this directly.

    Args:
        objects: Object labels in their presentation order
        hom: Map ``(x, y) -> tuple of morphism ids``; missing keys are empty
        table: Composition table ``(g, f) -> g∘f``, or None for a thin category
        names: Optional display names for morphisms
    """

    def __init__(
        self,
        objects: Iterable[Label],
        hom: HomTable,
        table: Optional[Dict[Tuple[MorId, MorId], MorId]] = None,
        names: Optional[Mapping[MorId, str]] = None,
    ) -> None:
        self._objects: Tuple[Label, ...] = tuple(objects)
        self._index: Dict[Label, int] = {x: k for k, x in enumerate(self._objects)}
        self._hom: HomTable = {key: tuple(value) for key, value in hom.items() if value}
        self._table = table
        self._names: Dict[MorId, str] = dict(names or {})
        self._out: Dict[Label, List[Label]] = {x: [] for x in self._objects}
        self._in: Dict[Label, List[Label]] = {x: [] for x in self._objects}
        for x, y in sorted(self._hom, key=lambda key: (self._index[key[0]], self._index[key[1]])):
            self._out[x].append(y)
            self._in[y].append(x)
        self._poset: Optional[bool] = None

    @property
    def objects(self) -> Tuple[Label, ...]:
        return self._objects

    @property
    def is_thin(self) -> bool:
        """True when composition is implied, i.e. every hom-set has at most one element."""
        return self._table is None

    @property
    def is_poset(self) -> bool:
        """True when every hom-set has size at most 1 and the relation is antisymmetric."""
        if self._poset is None:
            thin = all(len(arrows) <= 1 for arrows in self._hom.values())
            antisymmetric = all(
                x == y or (y, x) not in self._hom for (x, y) in self._hom
            )
            self._poset = thin and antisymmetric
        return self._poset

    @property
    def morphisms(self) -> List[MorId]:
        """All morphisms, ordered by source, then target, then index."""
        result: List[MorId] = []
        for x in self._objects:
            for y in self._out[x]:
                result.extend(self._hom[(x, y)])
        return result

    @property
    def table(self) -> Optional[Dict[Tuple[MorId, MorId], MorId]]:
        return None if self._table is None else dict(self._table)

    def __contains__(self, x: object) -> bool:
        try:
            return x in self._index
        except TypeError:
            return False

    def __len__(self) -> int:
        return len(self._objects)

    def __iter__(self) -> Iterator[Label]:
        return iter(self._objects)

    def __repr__(self) -> str:
        return (
            f"FinCat(objects={len(self._objects)}, morphisms={self.num_morphisms()}, "
            f"poset={self.is_poset})"
        )

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            self._objects == other._objects
            and self._hom == other._hom
            and self._table == other._table
        )

    __hash__ = None  # type: ignore[assignment]

    def num_morphisms(self) -> int:
        return sum(len(arrows) for arrows in self._hom.values())

    def position(self, x: Label) -> int:
        return self._index[x]

    def hom(self, x: Label, y: Label) -> Tuple[MorId, ...]:
        """Return the morphisms ``x -> y`` (possibly empty)."""
        return self._hom.get((x, y), ())

    def leq(self, x: Label, y: Label) -> bool:
        """True when there is at least one morphism ``x -> y``."""
        return (x, y) in self._hom

    def successors(self, x: Label) -> List[Label]:
        """Objects reachable from ``x`` by one morphism, ``x`` included."""
        return list(self._out[x])

    def predecessors(self, x: Label) -> List[Label]:
        return list(self._in[x])

    def identity(self, x: Label) -> MorId:
        if x not in self._index:
            raise ValueError(f"object {x!r} is not in the category")
        return (x, x, 0)

    def is_identity(self, m: MorId) -> bool:
        return m[0] == m[1] and m[2] == 0

    def compose(self, g: MorId, f: MorId) -> MorId:
        """
        Return ``g∘f``.

        Raises:
            ValueError: If ``target(f) != source(g)``
            CategoryLawError: If the composite is missing from the category
        """
        if f[1] != g[0]:
            raise ValueError(f"cannot compose {self.name(g)} after {self.name(f)}: not composable")
        if self._table is None:
            arrows = self.hom(f[0], g[1])
            if not arrows:
                raise CategoryLawError(
                    f"missing composite of {self.name(g)} and {self.name(f)}", witness=(g, f)
                )
            return arrows[0]
        try:
            return self._table[(g, f)]
        except KeyError:
            raise CategoryLawError(
                f"missing composite of {self.name(g)} and {self.name(f)}", witness=(g, f)
            ) from None

    def compose_path(self, arrows: Sequence[MorId], start: Label) -> MorId:
        """Compose a path given in diagrammatic order; the empty path is ``id_start``."""
        result = self.identity(start)
        for arrow in arrows:
            result = self.compose(arrow, result)
        return result

    def name(self, m: MorId) -> str:
        if m in self._names:
            return self._names[m]
        if self.is_identity(m):
            return f"id_{m[0]}"
        return f"{m[0]}->{m[1]}" if m[2] == 0 else f"{m[0]}->{m[1]}#{m[2]}"

    def morphism_named(self, name: str) -> MorId:
        for m, known in self._names.items():
            if known == name:
                return m
        raise KeyError(name)

    @property
    def names(self) -> Dict[MorId, str]:
        return dict(self._names)


def _thin_from_relation(
    objects: Sequence[Label], leq: Callable[[Label, Label], bool]
) -> FinCat:
    hom: HomTable = {}
    for x in objects:
        for y in objects:
            if x == y or leq(x, y):
                hom[(x, y)] = ((x, y, 0),)
    return FinCat(objects, hom)


def _general_category(
    objects: Sequence[Label],
    hom: HomTable,
    compose: Callable[[MorId, MorId], MorId],
    names: Optional[Mapping[MorId, str]] = None,
) -> FinCat:
    table: Dict[Tuple[MorId, MorId], MorId] = {}
    by_source: Dict[Label, List[MorId]] = {x: [] for x in objects}
    for arrows in hom.values():
        for m in arrows:
            by_source[m[0]].append(m)
    for arrows in hom.values():
        for f in arrows:
            for g in by_source[f[1]]:
                table[(g, f)] = compose(g, f)
    return FinCat(objects, hom, table=table, names=names)


def build_poset(objects: Iterable[Label], covers: Iterable[Sequence[Label]]) -> FinCat:
    """
    Build the poset generated by a cover relation.

    Morphisms are exactly the pairs ``x <= y`` of the reflexive-transitive
    closure.

    Args:
        objects: Distinct object labels
        covers: Pairs ``(a, b)`` meaning ``a <= b``

    Returns:
        Thin FinCat with ``is_poset`` set

    Raises:
        NotAPosetError: If labels repeat, a cover uses an unknown label,
            or the covers contain a cycle

    Example:
        >>> build_poset([0, 1], [(0, 1)]).num_morphisms()
        3
    """
    objects = list(objects)
    seen = set()
    for x in objects:
        if x in seen:
            raise NotAPosetError(f"duplicate object label {x!r}", witness=x)
        seen.add(x)

    graph = nx.DiGraph()
    graph.add_nodes_from(objects)
    for cover in covers:
        a, b = cover
        for end in (a, b):
            if end not in seen:
                raise NotAPosetError(f"cover {tuple(cover)!r} uses unknown label {end!r}", witness=end)
        if a != b:
            graph.add_edge(a, b)
    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle is not None:
        raise NotAPosetError(
            f"covers contain a cycle through {cycle[0][0]!r}",
            witness=[edge[:2] for edge in cycle],
        )

    hom: HomTable = {}
    for x in objects:
        hom[(x, x)] = ((x, x, 0),)
        for y in nx.descendants(graph, x):
            hom[(x, y)] = ((x, y, 0),)
    return FinCat(objects, hom)


def build_fincat(
    objects: Iterable[Label],
    arrows: Iterable[Sequence[Any]],
    composition: Iterable[Sequence[str]],
    identities: Optional[Mapping[Label, str]] = None,
) -> FinCat:
    """
    Build and validate a general finite category from named arrows.

    Args:
        objects: Object labels
        arrows: Triples ``(name, source, target)``
        composition: Triples ``(g, f, g∘f)`` of arrow names; composites
            with identities are filled in automatically
        identities: Optional ``object -> arrow name``; objects without an
            entry get a fresh identity arrow

    Returns:
        Validated FinCat

    Raises:
        CategoryLawError: Missing composite, identity failure or
            non-associative triple (the witness names the arrows)

    Example:
        >>> z2 = build_fincat(["*"], [("id", "*", "*"), ("g", "*", "*")],
        ...                   [("g", "g", "id")], identities={"*": "id"})
        >>> z2.is_poset
        False
    """
    from derivator_combinatorics.builder import CategoryBuilder

    builder = CategoryBuilder().objects(objects)
    identities = dict(identities or {})
    for name, source, target in arrows:
        if source == target and identities.get(source) == name:
            builder.identity(source, name)
        else:
            builder.arrow(name, source, target)
    for g, f, gf in composition:
        builder.compose(g, f, gf)
    return builder.build()


def terminal() -> FinCat:
    """The terminal category ``e`` with the single object ``"*"``."""
    return build_poset(["*"], [])


def ordinal_category(n: int) -> FinCat:
    """The chain ``[n] = {0 < 1 < ... < n}``."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a non-negative int, got {n!r}")
    return build_poset(range(n + 1), [(i, i + 1) for i in range(n)])


def discrete(labels: Iterable[Label]) -> FinCat:
    return build_poset(labels, [])


def product(left: FinCat, right: FinCat) -> FinCat:
    """
    Cartesian product of two categories.

    Objects are pairs ``(c, d)``; morphisms are pairs of morphisms and
    composition is componentwise.

    Example:
        >>> square = product(ordinal_category(1), ordinal_category(1))
        >>> len(square), square.num_morphisms()
        (4, 9)
    """
    objects = [(c, d) for c in left.objects for d in right.objects]
    if left.is_thin and right.is_thin:
        return _thin_from_relation(
            objects, lambda x, y: left.leq(x[0], y[0]) and right.leq(x[1], y[1])
        )

    hom: HomTable = {}
    pair_to_id: Dict[Tuple[MorId, MorId], MorId] = {}
    id_to_pair: Dict[MorId, Tuple[MorId, MorId]] = {}
    for x in objects:
        for y in objects:
            pairs = list(itertools.product(left.hom(x[0], y[0]), right.hom(x[1], y[1])))
            ids = []
            for k, pair in enumerate(pairs):
                m = (x, y, k)
                pair_to_id[pair] = m
                id_to_pair[m] = pair
                ids.append(m)
            if ids:
                hom[(x, y)] = tuple(ids)

    def compose(g: MorId, f: MorId) -> MorId:
        g1, g2 = id_to_pair[g]
        f1, f2 = id_to_pair[f]
        return pair_to_id[(left.compose(g1, f1), right.compose(g2, f2))]

    return _general_category(objects, hom, compose)


def coproduct(left: FinCat, right: FinCat) -> FinCat:
    """Disjoint union; objects are tagged ``(0, c)`` and ``(1, d)``."""
    objects = [(0, c) for c in left.objects] + [(1, d) for d in right.objects]
    parts = {0: left, 1: right}
    if left.is_thin and right.is_thin:
        return _thin_from_relation(
            objects, lambda x, y: x[0] == y[0] and parts[x[0]].leq(x[1], y[1])
        )
    hom: HomTable = {}
    for tag, part in parts.items():
        for m in part.morphisms:
            key = ((tag, m[0]), (tag, m[1]))
            hom[key] = hom.get(key, ()) + ((key[0], key[1], m[2]),)

    def compose(g: MorId, f: MorId) -> MorId:
        tag = f[0][0]
        inner = parts[tag].compose((g[0][1], g[1][1], g[2]), (f[0][1], f[1][1], f[2]))
        return ((tag, inner[0]), (tag, inner[1]), inner[2])

    return _general_category(objects, hom, compose)


def opposite(category: FinCat) -> FinCat:
    objects = list(category.objects)
    if category.is_thin:
        return _thin_from_relation(objects, lambda x, y: category.leq(y, x))
    hom: HomTable = {}
    for m in category.morphisms:
        key = (m[1], m[0])
        hom[key] = hom.get(key, ()) + ((m[1], m[0], m[2]),)

    def compose(g: MorId, f: MorId) -> MorId:
        inner = category.compose((f[1], f[0], f[2]), (g[1], g[0], g[2]))
        return (inner[1], inner[0], inner[2])

    return _general_category(objects, hom, compose)


def full_subcategory(category: FinCat, objects: Iterable[Label]) -> FinCat:
    """
    Full subcategory on the given objects, keeping the ambient order and ids.

    Raises:
        ValueError: If an object is not in the category
    """
    keep = set()
    for x in objects:
        if x not in category:
            raise ValueError(f"object {x!r} is not in the category")
        keep.add(x)
    ordered = [x for x in category.objects if x in keep]
    hom: HomTable = {
        (x, y): category.hom(x, y) for x in ordered for y in ordered if category.hom(x, y)
    }
    names = {m: n for m, n in category.names.items() if m[0] in keep and m[1] in keep}
    if category.is_thin:
        return FinCat(ordered, hom, names=names)
    table = {
        (g, f): gf
        for (g, f), gf in (category.table or {}).items()
        if f[0] in keep and f[1] in keep and g[1] in keep
    }
    return FinCat(ordered, hom, table=table, names=names)


def square() -> FinCat:
    """``[1]x[1]`` with objects ``(x, y)``."""
    return product(ordinal_category(1), ordinal_category(1))


def corner() -> FinCat:
    """The square without its terminal object ``(1, 1)``."""
    sq = square()
    return full_subcategory(sq, [x for x in sq.objects if x != (1, 1)])


def arrow_category(category: FinCat) -> FinCat:
    """
    Category of arrows and commuting squares.

    For a thin category the objects are pairs ``(x, y)`` with ``x <= y``
    ordered componentwise, so ``arrow_category(ordinal_category(n))`` is the
    poset ``Ar[n]`` of pairs ``(i, j)``, ``i <= j``. Otherwise the objects
    are the morphism ids of the input.

    Example:
        >>> arrow_category(ordinal_category(1)).objects
        ((0, 0), (0, 1), (1, 1))
    """
    if category.is_thin:
        objects = [
            (x, y) for x in category.objects for y in category.objects if category.leq(x, y)
        ]
        return _thin_from_relation(
            objects,
            lambda a, b: category.leq(a[0], b[0]) and category.leq(a[1], b[1]),
        )

    objects = category.morphisms
    hom: HomTable = {}
    squares: Dict[MorId, Tuple[MorId, MorId]] = {}
    lookup: Dict[Tuple[MorId, MorId, MorId, MorId], MorId] = {}
    for f in objects:
        for f2 in objects:
            ids = []
            for u in category.hom(f[0], f2[0]):
                for v in category.hom(f[1], f2[1]):
                    if category.compose(v, f) == category.compose(f2, u):
                        m = (f, f2, len(ids))
                        squares[m] = (u, v)
                        lookup[(f, f2, u, v)] = m
                        ids.append(m)
            if ids:
                hom[(f, f2)] = tuple(ids)

    def compose(g: MorId, h: MorId) -> MorId:
        u1, v1 = squares[h]
        u2, v2 = squares[g]
        return lookup[(h[0], g[1], category.compose(u2, u1), category.compose(v2, v1))]

    return _general_category(objects, hom, compose)


class Functor:
    """
    A functor between finite categories.

    The morphism map may be omitted when the target is thin; it is then
    derived from the object map and fails with :class:`FunctorError` on a
    non-monotone pair.

    Raises:
        FunctorError: If the object map misses a source object or leaves
            the target category, or the morphism map is missing for a
            non-thin target
    """

    def __init__(
        self,
        source: FinCat,
        target: FinCat,
        object_map: Mapping[Label, Label],
        morphism_map: Optional[Mapping[MorId, MorId]] = None,
        name: str = "",
    ) -> None:
        if not isinstance(source, FinCat) or not isinstance(target, FinCat):
            raise TypeError("source and target must be FinCat instances")
        for x in source.objects:
            if x not in object_map:
                raise FunctorError(f"object map misses source object {x!r}", witness=x)
            if object_map[x] not in target:
                raise FunctorError(
                    f"object {x!r} is sent to {object_map[x]!r}, which is not in the target",
                    witness=x,
                )
        if morphism_map is None and not target.is_thin:
            raise FunctorError("morphism_map is required when the target is not thin")
        self.source = source
        self.target = target
        self.name = name
        self._objects: Dict[Label, Label] = {x: object_map[x] for x in source.objects}
        self._morphisms = None if morphism_map is None else dict(morphism_map)

    def __call__(self, x: Label) -> Label:
        return self._objects[x]

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"Functor({label}{len(self.source)} objects -> {len(self.target)} objects)"

    @property
    def object_map(self) -> Dict[Label, Label]:
        return dict(self._objects)

    def fmap(self, m: MorId) -> MorId:
        """Image of a source morphism."""
        if self._morphisms is not None:
            try:
                return self._morphisms[m]
            except KeyError:
                raise FunctorError(f"morphism map misses {m!r}", witness=m) from None
        image = self.target.hom(self(m[0]), self(m[1]))
        if not image:
            raise FunctorError(
                f"no morphism {self(m[0])!r} -> {self(m[1])!r} for {m[0]!r} <= {m[1]!r}",
                witness=(m[0], m[1]),
            )
        return image[0]

    def image(self) -> List[Label]:
        seen: List[Label] = []
        for x in self.source.objects:
            if self(x) not in seen:
                seen.append(self(x))
        return seen


class NatTrans:
    """
    A natural transformation ``source_functor => target_functor``.

    Raises:
        FunctorError: If the functors are not parallel or a component has
            the wrong endpoints
    """

    def __init__(
        self,
        source_functor: Functor,
        target_functor: Functor,
        components: Mapping[Label, MorId],
    ) -> None:
        if (
            source_functor.source != target_functor.source
            or source_functor.target != target_functor.target
        ):
            raise FunctorError("functors of a natural transformation must be parallel")
        target = source_functor.target
        for x in source_functor.source.objects:
            if x not in components:
                raise FunctorError(f"missing component at {x!r}", witness=x)
            if components[x] not in target.hom(source_functor(x), target_functor(x)):
                raise FunctorError(
                    f"component at {x!r} is not a morphism "
                    f"{source_functor(x)!r} -> {target_functor(x)!r}",
                    witness=x,
                )
        self.source_functor = source_functor
        self.target_functor = target_functor
        self._components = dict(components)

    def __getitem__(self, x: Label) -> MorId:
        return self._components[x]

    @property
    def components(self) -> Dict[Label, MorId]:
        return dict(self._components)

    def check_naturality(self) -> Optional[Tuple[MorId, MorId, MorId]]:
        """Return ``(m, G(m)∘a_x, a_y∘F(m))`` for the first failing square, or None."""
        F, G = self.source_functor, self.target_functor
        target = F.target
        for m in F.source.morphisms:
            x, y = m[0], m[1]
            left = target.compose(G.fmap(m), self._components[x])
            right = target.compose(self._components[y], F.fmap(m))
            if left != right:
                return (m, left, right)
        return None


def poset_functor(
    source: FinCat,
    target: FinCat,
    mapping: Union[Mapping[Label, Label], Callable[[Label], Label]],
    name: str = "",
) -> Functor:
    """
    Functor into a thin category given by its object map only.

    Monotonicity is not checked here; use :func:`check_functor`.
    """
    if not target.is_thin:
        raise FunctorError("poset_functor needs a thin target category")
    if callable(mapping):
        object_map = {x: mapping(x) for x in source.objects}
    else:
        object_map = dict(mapping)
    return Functor(source, target, object_map, name=name)


def identity_functor(category: FinCat) -> Functor:
    morphisms = None if category.is_thin else {m: m for m in category.morphisms}
    return Functor(category, category, {x: x for x in category.objects}, morphisms, name="id")


def constant_functor(source: FinCat, target: FinCat, obj: Label) -> Functor:
    identity = target.identity(obj)
    morphisms = None if target.is_thin else {m: identity for m in source.morphisms}
    return Functor(source, target, {x: obj for x in source.objects}, morphisms, name=f"const {obj!r}")


def to_terminal(source: FinCat) -> Functor:
    """The unique functor to ``e``."""
    return constant_functor(source, terminal(), "*")


def inclusion(sub: FinCat, category: FinCat, name: str = "") -> Functor:
    """Inclusion of a full subcategory built with :func:`full_subcategory`."""
    morphisms = None if category.is_thin else {m: m for m in sub.morphisms}
    return Functor(sub, category, {x: x for x in sub.objects}, morphisms, name=name)


def compose_functors(second: Functor, first: Functor) -> Functor:
    """Return ``second∘first``."""
    if first.target != second.source:
        raise FunctorError("functors are not composable: target and source differ")
    morphisms = None
    if not second.target.is_thin:
        morphisms = {m: second.fmap(first.fmap(m)) for m in first.source.morphisms}
    name = f"{second.name}∘{first.name}" if second.name and first.name else ""
    return Functor(
        first.source,
        second.target,
        {x: second(first(x)) for x in first.source.objects},
        morphisms,
        name=name,
    )


def functors_equal(left: Functor, right: Functor) -> bool:
    if left.source != right.source or left.target != right.target:
        return False
    if any(left(x) != right(x) for x in left.source.objects):
        return False
    try:
        return all(left.fmap(m) == right.fmap(m) for m in left.source.morphisms)
    except FunctorError:
        return False


def check_functor(functor: Functor) -> Optional[Tuple[str, Any]]:
    """
    Check that a functor preserves endpoints, identities and composition.

    For a thin target this is exactly monotonicity of the object map.

    Returns:
        ``(reason, witness)`` for the first violation, or None
    """
    source, target = functor.source, functor.target
    images: Dict[MorId, MorId] = {}
    for m in source.morphisms:
        try:
            image = functor.fmap(m)
        except FunctorError as exc:
            return ("not monotone", exc.witness)
        if image[0] != functor(m[0]) or image[1] != functor(m[1]):
            return ("endpoints not preserved", m)
        if source.is_identity(m) and not target.is_identity(image):
            return ("identity not preserved", m)
        images[m] = image
    if target.is_thin:
        return None
    for f in source.morphisms:
        for y in source.successors(f[1]):
            for g in source.hom(f[1], y):
                if images[source.compose(g, f)] != target.compose(images[g], images[f]):
                    return ("composition not preserved", (g, f))
    return None


@dataclass(frozen=True)
class LawReport:
    """Outcome of :func:`check_category_laws`."""

    passed: bool
    violation: str = ""
    witness: Optional[Any] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"passed": self.passed, "violation": self.violation, "witness": self.witness}


def check_category_laws(category: FinCat) -> LawReport:
    """
    Check identity, closure and associativity laws exhaustively.

    Thin categories only need identities and transitivity of the relation;
    general categories are checked over every composable triple. Witnesses
    use display names, e.g. ``("g", "f", "h")`` for a failing associativity.
    """
    for x in category.objects:
        if (x, x, 0) not in category.hom(x, x):
            return LawReport(False, "missing identity", x)

    if category.is_thin:
        for x in category.objects:
            for y in category.successors(x):
                for z in category.successors(y):
                    if not category.leq(x, z):
                        return LawReport(False, "missing composite", (x, y, z))
        return LawReport(True)

    table = category.table or {}
    morphisms = category.morphisms
    outgoing: Dict[Label, List[MorId]] = {x: [] for x in category.objects}
    for m in morphisms:
        outgoing[m[0]].append(m)
    name = category.name

    for f in morphisms:
        for g in outgoing[f[1]]:
            if (g, f) not in table:
                return LawReport(False, "missing composite", (name(g), name(f)))
            gf = table[(g, f)]
            if gf[0] != f[0] or gf[1] != g[1] or gf not in category.hom(f[0], g[1]):
                return LawReport(False, "composite has wrong endpoints", (name(g), name(f)))

    for f in morphisms:
        if table[(category.identity(f[1]), f)] != f or table[(f, category.identity(f[0]))] != f:
            return LawReport(False, "identity failure", name(f))

    for h in morphisms:
        for f in outgoing[h[1]]:
            fh = table[(f, h)]
            for g in outgoing[f[1]]:
                if table[(g, fh)] != table[(table[(g, f)], h)]:
                    return LawReport(False, "non-associative triple", (name(g), name(f), name(h)))
    return LawReport(True)


@dataclass(frozen=True)
class InclusionClass:
    """Flags computed by :func:`classify_inclusion`."""

    fully_faithful: bool
    injective_on_objects: bool
    sieve: bool
    cosieve: bool

    def to_dict(self) -> Dict[str, bool]:
        return {
            "fully_faithful": self.fully_faithful,
            "injective_on_objects": self.injective_on_objects,
            "sieve": self.sieve,
            "cosieve": self.cosieve,
        }


def image_closure(functor: Functor) -> Tuple[bool, bool]:
    """
    Return ``(closed_under_incoming, closed_under_outgoing)`` for the image.

    Closed under incoming: every morphism ``k -> u(j)`` has ``k`` in the
    image. Closed under outgoing is the dual.
    """
    target = functor.target
    image = set(functor.image())
    incoming = all(k in image for y in image for k in target.predecessors(y))
    outgoing = all(k in image for y in image for k in target.successors(y))
    return incoming, outgoing


def classify_inclusion(functor: Functor) -> InclusionClass:
    """
    Classify a functor as (co)sieve, fully faithful and/or injective.

    Returns:
        InclusionClass; ``sieve``/``cosieve`` are only set when the functor
        is both fully faithful and injective on objects

    Example:
        >>> one = ordinal_category(1)
        >>> t = poset_functor(terminal(), one, {"*": 1})
        >>> classify_inclusion(t).cosieve
        True
    """
    source, target = functor.source, functor.target
    injective = len(set(functor.image())) == len(source)

    fully_faithful = True
    for x in source.objects:
        for y in source.objects:
            try:
                images = [functor.fmap(m) for m in source.hom(x, y)]
            except FunctorError:
                fully_faithful = False
                break
            expected = target.hom(functor(x), functor(y))
            if len(set(images)) != len(images) or set(images) != set(expected):
                fully_faithful = False
                break
        if not fully_faithful:
            break

    incoming, outgoing = image_closure(functor)
    embedded = fully_faithful and injective
    return InclusionClass(
        fully_faithful=fully_faithful,
        injective_on_objects=injective,
        sieve=embedded and incoming,
        cosieve=embedded and outgoing,
    )


class Comma(NamedTuple):
    """Result of :func:`comma`."""

    category: FinCat
    projection: Functor
    alpha: NatTrans


def comma(functor: Functor, k: Label) -> Comma:
    """
    Comma category ``(u/k)`` with its projection and canonical transformation.

    Objects are pairs ``(j, f)`` with ``f: u(j) -> k``; a morphism
    ``(j, f) -> (j', f')`` is ``g: j -> j'`` with ``f'∘u(g) = f``.

    Args:
        functor: ``u: J -> K``
        k: Object of ``K``

    Returns:
        ``Comma(category, projection, alpha)`` where ``projection`` forgets
        ``f`` and ``alpha: u∘pr => const_k`` has component ``f`` at ``(j, f)``

    Raises:
        ValueError: If ``k`` is not an object of the target

    Example:
        >>> one = ordinal_category(1)
        >>> len(comma(identity_functor(one), 1).category)
        2
    """
    J, K = functor.source, functor.target
    if k not in K:
        raise ValueError(f"object {k!r} is not in the target category")

    objects = [(j, f) for j in J.objects for f in K.hom(functor(j), k)]

    def arrows(a: Tuple[Label, MorId], b: Tuple[Label, MorId]) -> List[MorId]:
        return [g for g in J.hom(a[0], b[0]) if K.compose(b[1], functor.fmap(g)) == a[1]]

    underlying: Dict[MorId, MorId] = {}
    if J.is_thin:
        category = _thin_from_relation(objects, lambda a, b: bool(arrows(a, b)))
        for m in category.morphisms:
            underlying[m] = J.hom(m[0][0], m[1][0])[0]
    else:
        hom: HomTable = {}
        lookup: Dict[Tuple[Any, Any, MorId], MorId] = {}
        for a in objects:
            for b in objects:
                ids = []
                for g in arrows(a, b):
                    m = (a, b, len(ids))
                    underlying[m] = g
                    lookup[(a, b, g)] = m
                    ids.append(m)
                if ids:
                    hom[(a, b)] = tuple(ids)

        def compose(g: MorId, f: MorId) -> MorId:
            return lookup[(f[0], g[1], J.compose(underlying[g], underlying[f]))]

        category = _general_category(objects, hom, compose)

    projection = Functor(
        category,
        J,
        {x: x[0] for x in objects},
        None if J.is_thin else underlying,
        name="pr",
    )
    alpha = NatTrans(
        compose_functors(functor, projection),
        constant_functor(category, K, k),
        {x: x[1] for x in objects},
    )
    return Comma(category, projection, alpha)


@dataclass(frozen=True)
class AdjunctionReport:
    """Outcome of :func:`check_adjunction`."""

    passed: bool
    mode: str
    failure: str = ""
    witness: Optional[Any] = None
    unit: Optional[NatTrans] = field(default=None, compare=False, repr=False)
    counit: Optional[NatTrans] = field(default=None, compare=False, repr=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "mode": self.mode,
            "failure": self.failure,
            "witness": self.witness,
        }


def check_adjunction(
    left: Functor,
    right: Functor,
    unit: Optional[NatTrans] = None,
    counit: Optional[NatTrans] = None,
) -> AdjunctionReport:
    """
    Check ``left ⊣ right``.

    With explicit ``unit: id => right∘left`` and ``counit: left∘right => id``
    the naturality squares and both triangle identities are checked. With
    neither supplied, both categories must be thin and the hom criterion
    ``Hom(left c, d) nonempty <=> Hom(c, right d) nonempty`` is checked
    for every pair; unit and counit are then synthesized.

    Returns:
        AdjunctionReport; on failure the witness is the failing pair
        ``(c, d)`` or the object where a triangle identity breaks

    Raises:
        FunctorError: If the functors or the unit/counit are not well-typed
        ValueError: If only one of unit/counit is given, or the hom
            criterion is requested for non-thin categories
    """
    C, D = left.source, left.target
    if right.source != D or right.target != C:
        raise FunctorError("right adjoint must go back from the target of the left adjoint")
    if (unit is None) != (counit is None):
        raise ValueError("supply both unit and counit, or neither")

    right_left = compose_functors(right, left)
    left_right = compose_functors(left, right)

    if unit is None:
        if not (C.is_thin and D.is_thin):
            raise ValueError("the hom criterion needs thin categories; supply unit and counit")
        for c in C.objects:
            for d in D.objects:
                if D.leq(left(c), d) != C.leq(c, right(d)):
                    return AdjunctionReport(
                        False,
                        "hom-criterion",
                        f"Hom({left(c)!r}, {d!r}) and Hom({c!r}, {right(d)!r}) disagree",
                        (c, d),
                    )
        unit = NatTrans(
            identity_functor(C),
            right_left,
            {c: C.hom(c, right(left(c)))[0] for c in C.objects},
        )
        counit = NatTrans(
            left_right,
            identity_functor(D),
            {d: D.hom(left(right(d)), d)[0] for d in D.objects},
        )
        return AdjunctionReport(True, "hom-criterion", unit=unit, counit=counit)

    assert counit is not None
    if not functors_equal(unit.source_functor, identity_functor(C)) or not functors_equal(
        unit.target_functor, right_left
    ):
        raise FunctorError("unit must be a transformation id => right∘left")
    if not functors_equal(counit.source_functor, left_right) or not functors_equal(
        counit.target_functor, identity_functor(D)
    ):
        raise FunctorError("counit must be a transformation left∘right => id")

    for label, transformation in (("unit", unit), ("counit", counit)):
        broken = transformation.check_naturality()
        if broken is not None:
            return AdjunctionReport(False, "triangle", f"{label} is not natural", broken[0])

    for c in C.objects:
        composite = D.compose(counit[left(c)], left.fmap(unit[c]))
        if composite != D.identity(left(c)):
            return AdjunctionReport(False, "triangle", "counit∘left(unit) is not the identity", c)
    for d in D.objects:
        composite = C.compose(right.fmap(counit[d]), unit[right(d)])
        if composite != C.identity(right(d)):
            return AdjunctionReport(False, "triangle", "right(counit)∘unit is not the identity", d)
    return AdjunctionReport(True, "triangle", unit=unit, counit=counit)


def is_finite_direct(category: FinCat) -> Tuple[bool, Optional[int]]:
    """
    Decide whether the nerve has finitely many nondegenerate simplices.

    Returns:
        ``(True, count)`` where ``count`` is the number of composable chains
        of non-identity morphisms (objects count as length-0 chains), or
        ``(False, None)`` if there is a non-identity endomorphism or a cycle

    Example:
        >>> is_finite_direct(ordinal_category(2))
        (True, 7)
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(category.objects)
    for x in category.objects:
        for y in category.successors(x):
            arrows = category.hom(x, y)
            if x == y:
                if len(arrows) > 1:
                    return False, None
                continue
            graph.add_edge(x, y, weight=len(arrows))
    if not nx.is_directed_acyclic_graph(graph):
        return False, None

    chains_ending: Dict[Label, int] = {}
    for v in nx.topological_sort(graph):
        chains_ending[v] = 1 + sum(
            chains_ending[u] * graph.edges[u, v]["weight"] for u in graph.predecessors(v)
        )
    return True, sum(chains_ending.values())


def is_poset_category(category: FinCat) -> bool:
    """
    True when a category is a poset, whatever its representation.

    A category read from a general presentation qualifies when every
    hom-set has at most one element and no two distinct objects are
    isomorphic.
    """
    return category.is_poset
