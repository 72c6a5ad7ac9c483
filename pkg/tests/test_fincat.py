"""
Tests for finite categories, functors and natural transformations.
"""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from derivator_combinatorics.errors import CategoryLawError, FunctorError, NotAPosetError
from derivator_combinatorics.fincat import (
    FinCat,
    Functor,
    NatTrans,
    arrow_category,
    build_fincat,
    build_poset,
    check_adjunction,
    check_category_laws,
    check_functor,
    classify_inclusion,
    comma,
    compose_functors,
    constant_functor,
    coproduct,
    discrete,
    full_subcategory,
    functors_equal,
    identity_functor,
    image_closure,
    inclusion,
    is_finite_direct,
    is_poset_category,
    opposite,
    ordinal_category,
    poset_functor,
    product,
    terminal,
    to_terminal,
)


class TestBuildPoset:
    """Tests for build_poset."""

    def test_closure(self):
        """Test covers are closed reflexively and transitively."""
        chain = build_poset([0, 1, 2], [(0, 1), (1, 2)])
        assert chain.leq(0, 2)
        assert not chain.leq(2, 0)
        assert chain.num_morphisms() == 6
        assert chain.is_poset

    def test_self_cover_ignored(self):
        """Test a cover (x, x) adds nothing."""
        assert build_poset(["a"], [("a", "a")]).num_morphisms() == 1

    def test_cycle_rejected_with_witness(self):
        """Test a cyclic cover relation raises with the cycle as witness."""
        with pytest.raises(NotAPosetError) as exc_info:
            build_poset([0, 1, 2], [(0, 1), (1, 2), (2, 0)])
        assert len(exc_info.value.witness) == 3

    def test_duplicate_label(self):
        """Test repeated labels are rejected."""
        with pytest.raises(NotAPosetError, match="duplicate"):
            build_poset([0, 0], [])

    def test_unknown_label(self):
        """Test covers must use declared labels."""
        with pytest.raises(NotAPosetError, match="unknown"):
            build_poset([0], [(0, 1)])

    def test_errors_are_value_errors(self):
        """Test domain errors can be caught as ValueError."""
        with pytest.raises(ValueError):
            build_poset([0, 1], [(0, 1), (1, 0)])


class TestGeneralCategories:
    """Tests for build_fincat and the general representation."""

    def test_z2(self, z2):
        """Test the two-element group is a category but not a poset."""
        assert len(z2) == 1
        assert z2.num_morphisms() == 2
        assert not z2.is_poset
        assert not is_poset_category(z2)
        assert check_category_laws(z2).passed

    def test_composition_table(self, z2):
        """Test g∘g is the identity."""
        g = z2.morphism_named("g")
        assert z2.compose(g, g) == z2.identity("*")

    def test_missing_composite(self):
        """Test an unrecorded composite raises with the arrow names."""
        with pytest.raises(CategoryLawError) as exc_info:
            build_fincat(["*"], [("g", "*", "*")], [])
        assert exc_info.value.witness == ("g", "g")

    def test_thin_general_input_is_poset(self):
        """Test a general presentation with unique arrows is detected as a poset."""
        category = build_fincat([0, 1], [("f", 0, 1)], [])
        assert category.is_poset
        assert is_poset_category(category)

    def test_compose_not_composable(self):
        """Test composing arrows that do not meet."""
        chain = ordinal_category(2)
        with pytest.raises(ValueError, match="not composable"):
            chain.compose((0, 1, 0), (1, 2, 0))

    def test_repr(self):
        """Test repr shows sizes."""
        assert repr(ordinal_category(1)) == "FinCat(objects=2, morphisms=3, poset=True)"


class TestConstructors:
    """Tests for products, coproducts and friends."""

    def test_product_square(self, sq):
        """Test [1]x[1] has 4 objects and 9 morphisms."""
        assert len(sq) == 4
        assert sq.num_morphisms() == 9

    def test_product_general(self, z2):
        """Test the product of general categories satisfies the laws."""
        both = product(z2, z2)
        assert both.num_morphisms() == 4
        assert check_category_laws(both).passed

    def test_coproduct_tags(self):
        """Test coproduct tags objects by side."""
        union = coproduct(terminal(), ordinal_category(1))
        assert union.objects == ((0, "*"), (1, 0), (1, 1))
        assert not union.leq((0, "*"), (1, 1))

    def test_opposite(self):
        """Test the opposite reverses every arrow."""
        chain = opposite(ordinal_category(2))
        assert chain.leq(2, 0)
        assert not chain.leq(0, 2)

    def test_opposite_general(self, z2):
        """Test the opposite of a general category satisfies the laws."""
        assert check_category_laws(opposite(z2)).passed

    def test_full_subcategory_keeps_ids(self, sq):
        """Test full subcategories keep the ambient morphism ids."""
        sub = full_subcategory(sq, [(0, 0), (1, 1)])
        assert sub.hom((0, 0), (1, 1)) == sq.hom((0, 0), (1, 1))

    def test_full_subcategory_unknown(self, sq):
        """Test full_subcategory rejects foreign objects."""
        with pytest.raises(ValueError):
            full_subcategory(sq, [(2, 2)])

    def test_arrow_category_of_poset(self, ar3):
        """Test Ar[3] has the pairs i <= j."""
        assert len(ar3) == 10
        assert ar3.leq((0, 1), (1, 2))
        assert not ar3.leq((1, 1), (0, 2))

    def test_arrow_category_general(self, z2):
        """Test the arrow category of Z/2 has 2 objects and 8 squares."""
        arrows = arrow_category(z2)
        assert len(arrows) == 2
        assert arrows.num_morphisms() == 8
        assert check_category_laws(arrows).passed

    def test_discrete(self):
        """Test discrete categories have only identities."""
        assert discrete("abc").num_morphisms() == 3

    def test_ordinal_rejects_negative(self):
        """Test ordinal_category validates n."""
        with pytest.raises(ValueError):
            ordinal_category(-1)


class TestFunctors:
    """Tests for Functor and the functor helpers."""

    def test_monotone_functor(self, sq):
        """Test a monotone object map is a functor."""
        first = poset_functor(sq, ordinal_category(1), lambda x: x[0])
        assert check_functor(first) is None

    def test_non_monotone_functor(self):
        """Test the witness of a non-monotone map is the failing pair."""
        swap = poset_functor(ordinal_category(1), ordinal_category(1), {0: 1, 1: 0})
        reason, witness = check_functor(swap)
        assert reason == "not monotone"
        assert witness == (0, 1)

    def test_object_outside_target(self):
        """Test an object map leaving the target is rejected."""
        with pytest.raises(FunctorError):
            Functor(terminal(), ordinal_category(1), {"*": 5})

    def test_missing_object(self):
        """Test an incomplete object map is rejected."""
        with pytest.raises(FunctorError):
            Functor(ordinal_category(1), ordinal_category(1), {0: 0})

    def test_general_target_needs_morphisms(self, z2):
        """Test a general target requires a morphism map."""
        with pytest.raises(FunctorError):
            Functor(terminal(), z2, {"*": "*"})

    def test_composition_of_functors(self):
        """Test compose_functors composes object maps."""
        shift = poset_functor(ordinal_category(1), ordinal_category(2), lambda i: i + 1, name="s")
        double = poset_functor(ordinal_category(2), ordinal_category(4), lambda i: 2 * i, name="d")
        composite = compose_functors(double, shift)
        assert composite.object_map == {0: 2, 1: 4}
        assert composite.name == "d∘s"

    def test_identity_and_equality(self, z2):
        """Test identity functors on general categories."""
        one = identity_functor(z2)
        assert check_functor(one) is None
        assert functors_equal(one, identity_functor(z2))

    def test_constant_and_terminal(self, sq):
        """Test constant functors and the map to e."""
        assert check_functor(constant_functor(sq, ordinal_category(1), 1)) is None
        assert set(to_terminal(sq).image()) == {"*"}

    def test_explicit_morphism_maps(self, z2):
        """Test an explicit identity map passes and a map sending id to g fails."""
        g = z2.morphism_named("g")
        identity = z2.identity("*")
        broken = Functor(z2, z2, {"*": "*"}, {identity: identity, g: g})
        assert check_functor(broken) is None
        trivial = Functor(z2, z2, {"*": "*"}, {identity: g, g: g})
        assert check_functor(trivial) == ("identity not preserved", identity)


class TestNaturalTransformations:
    """Tests for NatTrans."""

    def test_naturality(self):
        """Test the transformation id => constant top on [1]."""
        chain = ordinal_category(1)
        alpha = NatTrans(
            identity_functor(chain),
            constant_functor(chain, chain, 1),
            {0: (0, 1, 0), 1: (1, 1, 0)},
        )
        assert alpha.check_naturality() is None
        assert alpha[0] == (0, 1, 0)

    def test_wrong_component(self):
        """Test a component with the wrong endpoints is rejected."""
        chain = ordinal_category(1)
        with pytest.raises(FunctorError):
            NatTrans(
                identity_functor(chain),
                constant_functor(chain, chain, 0),
                {0: (0, 0, 0), 1: (1, 1, 0)},
            )

    def test_not_parallel(self):
        """Test functors must share source and target."""
        with pytest.raises(FunctorError):
            NatTrans(
                identity_functor(ordinal_category(1)),
                identity_functor(ordinal_category(2)),
                {},
            )


class TestClassification:
    """Tests for classify_inclusion."""

    def test_target_is_cosieve(self):
        """Test t: e -> [1] at 1 is a cosieve and not a sieve."""
        t = poset_functor(terminal(), ordinal_category(1), {"*": 1})
        flags = classify_inclusion(t)
        assert flags.cosieve
        assert not flags.sieve

    def test_source_is_sieve(self):
        """Test e -> [1] at 0 is a sieve."""
        flags = classify_inclusion(poset_functor(terminal(), ordinal_category(1), {"*": 0}))
        assert flags.sieve
        assert not flags.cosieve

    def test_not_full(self):
        """Test a discrete pair into a chain is not fully faithful."""
        pair = discrete([0, 1])
        flags = classify_inclusion(poset_functor(pair, ordinal_category(1), {0: 0, 1: 1}))
        assert not flags.fully_faithful
        assert flags.injective_on_objects
        assert not flags.sieve
        assert not flags.cosieve

    def test_not_injective(self, sq):
        """Test a collapsing functor."""
        flags = classify_inclusion(poset_functor(sq, ordinal_category(1), lambda x: x[0]))
        assert not flags.injective_on_objects

    def test_image_closure(self, sq, cor):
        """Test the corner is closed under incoming arrows in the square."""
        assert image_closure(inclusion(cor, sq)) == (True, False)

    def test_to_dict(self):
        """Test flag serialization."""
        flags = classify_inclusion(identity_functor(ordinal_category(1)))
        assert flags.to_dict() == {
            "fully_faithful": True,
            "injective_on_objects": True,
            "sieve": True,
            "cosieve": True,
        }


class TestComma:
    """Tests for comma categories."""

    def test_identity_comma(self):
        """Test (id/1) on [1] has both objects."""
        result = comma(identity_functor(ordinal_category(1)), 1)
        assert len(result.category) == 2
        assert result.alpha.check_naturality() is None

    def test_comma_over_bottom(self):
        """Test (id/0) on [1] is the single object 0."""
        result = comma(identity_functor(ordinal_category(1)), 0)
        assert [result.projection(x) for x in result.category.objects] == [0]

    def test_unknown_object(self):
        """Test comma rejects objects outside the target."""
        with pytest.raises(ValueError):
            comma(identity_functor(ordinal_category(1)), 7)

    def test_general_comma(self, z2):
        """Test (id/*) over Z/2 has one object per arrow."""
        result = comma(identity_functor(z2), "*")
        assert len(result.category) == 2
        assert check_category_laws(result.category).passed
        assert check_functor(result.projection) is None


class TestAdjunction:
    """Tests for check_adjunction."""

    def test_hom_criterion(self):
        """Test the reflection of [1] onto its top element."""
        chain = ordinal_category(1)
        top = full_subcategory(chain, [1])
        left = poset_functor(chain, top, {0: 1, 1: 1})
        right = inclusion(top, chain)
        report = check_adjunction(left, right)
        assert report.passed
        assert report.mode == "hom-criterion"
        assert report.unit is not None

    def test_hom_criterion_failure(self):
        """Test the wrong direction fails with a witness pair."""
        chain = ordinal_category(1)
        top = full_subcategory(chain, [1])
        left = poset_functor(chain, top, {0: 1, 1: 1})
        report = check_adjunction(inclusion(top, chain), left)
        assert not report.passed
        assert report.witness == (1, 0)

    def test_triangle_mode(self):
        """Test explicit unit and counit are checked with triangle identities."""
        chain = ordinal_category(1)
        top = full_subcategory(chain, [1])
        left = poset_functor(chain, top, {0: 1, 1: 1})
        right = inclusion(top, chain)
        synthesized = check_adjunction(left, right)
        report = check_adjunction(left, right, synthesized.unit, synthesized.counit)
        assert report.passed
        assert report.mode == "triangle"

    def test_unit_without_counit(self):
        """Test unit and counit must come together."""
        chain = ordinal_category(1)
        top = full_subcategory(chain, [1])
        left = poset_functor(chain, top, {0: 1, 1: 1})
        right = inclusion(top, chain)
        unit = check_adjunction(left, right).unit
        with pytest.raises(ValueError):
            check_adjunction(left, right, unit=unit)

    def test_mismatched_functors(self):
        """Test right adjoints must go back."""
        chain = ordinal_category(1)
        with pytest.raises(FunctorError):
            check_adjunction(identity_functor(chain), identity_functor(ordinal_category(2)))


class TestFiniteDirect:
    """Tests for is_finite_direct."""

    @pytest.mark.parametrize("n", range(6))
    def test_ordinals(self, n):
        """Test [n] has 2^(n+1) - 1 nondegenerate chains."""
        assert is_finite_direct(ordinal_category(n)) == (True, 2 ** (n + 1) - 1)

    def test_square(self, sq):
        """Test the square: 4 objects, 5 arrows, 2 composable pairs."""
        assert is_finite_direct(sq) == (True, 11)

    def test_endomorphism(self, z2):
        """Test a non-identity endomorphism is not finite direct."""
        assert is_finite_direct(z2) == (False, None)


@st.composite
def small_posets(draw):
    size = draw(st.integers(min_value=1, max_value=4))
    covers = [
        (a, b)
        for a in range(size)
        for b in range(a + 1, size)
        if draw(st.booleans())
    ]
    return build_poset(range(size), covers)


class TestProductProperties:
    """Property tests for products."""

    @settings(max_examples=30, deadline=None)
    @given(small_posets(), small_posets())
    def test_product_sizes(self, left: FinCat, right: FinCat):
        """Test |C x D| objects and morphisms multiply."""
        both = product(left, right)
        assert len(both) == len(left) * len(right)
        assert both.num_morphisms() == left.num_morphisms() * right.num_morphisms()
        assert check_category_laws(both).passed
