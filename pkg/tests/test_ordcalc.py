"""
Tests for the total-order calculus.
"""
import pytest
from hypothesis import given
from hypothesis import strategies as st

from derivator_combinatorics.errors import OrderError
from derivator_combinatorics.ordcalc import (
    D_MAP,
    E_MAP,
    S_MAP,
    MonotoneMap,
    TotalOrder,
    a_primary_pullback,
    block_decomposition,
    block_inclusions,
    canonical_iso,
    concat,
    concat_many,
    decomposition_suite,
    functoriality_suite,
    grayson_pullback,
    induced_map,
    interval_data,
    interval_suite,
    lex,
    monotone_maps,
    ordinal,
    pullback_order,
    threshold_maps,
)


class TestTotalOrder:
    """Tests for TotalOrder and MonotoneMap."""

    def test_empty_rejected(self):
        """Test empty orders are not allowed."""
        with pytest.raises(OrderError, match="nonempty"):
            TotalOrder(())

    def test_repeated_rejected(self):
        """Test repeated labels carry the label as witness."""
        with pytest.raises(OrderError) as exc_info:
            TotalOrder(("a", "b", "a"))
        assert exc_info.value.witness == "a"

    def test_index_and_leq(self):
        """Test positions follow list order."""
        order = TotalOrder(("x", "y", "z"))
        assert order.index("z") == 2
        assert order.leq("x", "y")
        assert not order.leq("z", "y")
        assert "y" in order

    def test_unknown_element(self):
        """Test index of a foreign element."""
        with pytest.raises(OrderError):
            ordinal(1).index(5)

    def test_non_monotone(self):
        """Test a decreasing map is rejected with the failing pair."""
        with pytest.raises(OrderError) as exc_info:
            MonotoneMap(ordinal(1), ordinal(1), (1, 0))
        assert exc_info.value.witness == (0, 1)

    def test_wrong_length(self):
        """Test values must match the source size."""
        with pytest.raises(OrderError):
            MonotoneMap(ordinal(1), ordinal(1), (0,))

    def test_compose(self):
        """Test composition of monotone maps."""
        composite = D_MAP.compose(S_MAP)
        assert composite.values == (0, 1, 1)
        assert S_MAP.compose(E_MAP).values == (0, 1)

    def test_ordinal_validation(self):
        """Test ordinal rejects negative sizes."""
        with pytest.raises(OrderError):
            ordinal(-1)


class TestOrderConstructions:
    """Tests for concatenation, lex and enumeration."""

    def test_concat(self):
        """Test A*B tags blocks."""
        joined = concat(ordinal(0), ordinal(1))
        assert joined.elements == ((0, 0), (1, 0), (1, 1))

    def test_concat_many_requires_input(self):
        """Test concat_many needs an order."""
        with pytest.raises(OrderError):
            concat_many([])

    def test_block_inclusions(self):
        """Test i0 and i1 land in the two blocks."""
        i0, i1 = block_inclusions(ordinal(1))
        assert i0.values == ((0, 0), (0, 1))
        assert i1.values == ((1, 0), (1, 1))

    def test_lex(self):
        """Test lexicographic pairs."""
        assert lex(ordinal(1), ordinal(0)).elements == ((0, 0), (1, 0))

    def test_canonical_iso(self):
        """Test the isomorphism onto an ordinal."""
        iso = canonical_iso(concat(ordinal(0), ordinal(1)))
        assert iso.values == (0, 1, 2)
        assert iso.target == ordinal(2)

    @pytest.mark.parametrize("m, n, expected", [(0, 0, 1), (1, 2, 6), (2, 1, 4), (2, 2, 10)])
    def test_monotone_map_count(self, m, n, expected):
        """Test the number of monotone maps [m] -> [n]."""
        assert len(list(monotone_maps(ordinal(m), ordinal(n)))) == expected

    def test_threshold_maps(self):
        """Test the n+2 maps [n] -> [1] run from constant 0 to constant 1."""
        maps = threshold_maps(2)
        assert [phi.values for phi in maps] == [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)]


class TestPullback:
    """Tests for the pulled-back order."""

    def test_identity_pullback(self):
        """Test the pullback of the identity of [1]."""
        result = grayson_pullback(MonotoneMap.identity(ordinal(1)))
        assert not result.empty
        assert result.order.elements == ((0, 0), (1, 1), (1, 2))

    def test_constant_one_is_b_primary(self):
        """Test the [2]-coordinate comes first."""
        phi = MonotoneMap(ordinal(1), ordinal(1), (1, 1))
        assert pullback_order(phi).elements == ((0, 1), (1, 1), (0, 2), (1, 2))

    def test_a_primary_order_is_not_blockwise(self):
        """Test the a-first order cannot be relabeled onto the fibre blocks."""
        phi = MonotoneMap(ordinal(1), ordinal(1), (1, 1))
        order = a_primary_pullback(phi)
        assert order.elements == ((0, 1), (0, 2), (1, 1), (1, 2))
        blocks = TotalOrder(((1, 0), (1, 1), (2, 0), (2, 1)))
        with pytest.raises(OrderError):
            MonotoneMap(order, blocks, tuple((b, a) for a, b in order))

    def test_empty_pullback(self):
        """Test an s with no preimage of phi's values gives an empty pullback."""
        phi = MonotoneMap(ordinal(0), ordinal(1), (1,))
        s = MonotoneMap(ordinal(0), ordinal(1), (0,))
        result = grayson_pullback(phi, s)
        assert result.empty
        assert result.order is None
        assert a_primary_pullback(phi, s) is None

    def test_mismatched_targets(self):
        """Test phi and s must share a target."""
        phi = MonotoneMap.identity(ordinal(2))
        with pytest.raises(OrderError):
            grayson_pullback(phi)


class TestIntervals:
    """Tests for d, e and the block decomposition."""

    def test_constant_zero(self):
        """Test d = e over the fibre of 0."""
        data = interval_data(MonotoneMap(ordinal(1), ordinal(1), (0, 0)))
        assert data.d.values == data.e.values

    def test_identity(self):
        """Test d and e for the identity of [1]."""
        data = interval_data(MonotoneMap.identity(ordinal(1)))
        assert data.d.values == ((0, 0), (1, 1))
        assert data.e.values == ((0, 0), (1, 2))
        assert data.zeta == (((0, 0), (0, 0)), ((1, 1), (1, 2)))

    def test_requires_map_to_one(self):
        """Test interval_data only accepts maps into [1]."""
        with pytest.raises(OrderError):
            interval_data(MonotoneMap.identity(ordinal(2)))

    def test_block_decomposition(self):
        """Test the relabeling of the constant-one pullback."""
        phi = MonotoneMap(ordinal(1), ordinal(1), (1, 1))
        relabel = block_decomposition(phi)
        assert relabel.values == ((1, 0), (1, 1), (2, 0), (2, 1))

    def test_induced_map(self):
        """Test psi' for psi: [0] -> [1] at 1 over the identity."""
        psi = MonotoneMap(ordinal(0), ordinal(1), (1,))
        lifted = induced_map(psi, MonotoneMap.identity(ordinal(1)))
        assert lifted.values == ((1, 1), (1, 2))

    @given(st.integers(min_value=0, max_value=6), st.data())
    def test_decomposition_is_bijective(self, n, data):
        """Test every threshold map decomposes onto its blocks."""
        phi = data.draw(st.sampled_from(threshold_maps(n)))
        relabel = block_decomposition(phi)
        assert len(set(relabel.values)) == len(relabel.target)


class TestSuites:
    """Tests for the exhaustive suites."""

    def test_decomposition_suite(self):
        """Test the suite counts n+2 maps per n."""
        result = decomposition_suite(3)
        assert result.passed
        assert result.cases == 2 + 3 + 4 + 5

    def test_interval_suite(self):
        """Test the interval suite passes at the default size."""
        assert interval_suite().passed

    def test_functoriality_suite(self):
        """Test the functoriality suite at a small size."""
        result = functoriality_suite(3)
        assert result.passed
        assert result.cases > 0
