import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from attrmetric import (
    ScoreMatrix,
    binarize_scores,
    split_meaningful,
    validate_attribute_matrix,
)
from attrmetric.errors import (
    DegenerateSplit,
    EmptyMatrix,
    NonBinaryEntry,
    NonFiniteScore,
    RaggedRows,
    TooFewAttributes,
)

pm1_matrix = st.integers(1, 6).flatmap(
    lambda n: st.integers(1, 6).flatmap(
        lambda k: st.lists(
            st.lists(st.sampled_from([-1, 1]), min_size=k, max_size=k),
            min_size=n,
            max_size=n,
        )
    )
)


class TestValidate:
    def test_valid_2x2(self):
        m = validate_attribute_matrix([[1, -1], [-1, 1]])
        assert m.n_images == 2 and m.n_attrs == 2
        assert m.entries.tolist() == [[1, -1], [-1, 1]]

    def test_zero_entry_rejected(self):
        with pytest.raises(NonBinaryEntry):
            validate_attribute_matrix([[1, 0], [-1, 1]])

    def test_empty_rejected(self):
        with pytest.raises(EmptyMatrix):
            validate_attribute_matrix([])
        with pytest.raises(EmptyMatrix):
            validate_attribute_matrix(np.empty((0, 3), dtype=int))
        with pytest.raises(EmptyMatrix):
            validate_attribute_matrix([[], []])

    def test_ragged_rejected(self):
        with pytest.raises(RaggedRows):
            validate_attribute_matrix([[1, -1], [1]])

    @given(pm1_matrix)
    @settings(max_examples=50)
    def test_roundtrip_identity(self, rows):
        m = validate_attribute_matrix(rows)
        again = validate_attribute_matrix(m.entries)
        assert np.array_equal(m.entries, again.entries)


class TestBinarize:
    def test_signs(self):
        out = binarize_scores(ScoreMatrix(np.array([[0.7, -2.1]])))
        assert out.entries.tolist() == [[1, -1]]

    def test_zero_policy(self):
        scores = ScoreMatrix(np.array([[0.0]]))
        assert binarize_scores(scores, "map_to_plus").entries.tolist() == [[1]]
        assert binarize_scores(scores, "map_to_minus").entries.tolist() == [[-1]]

    def test_nan_rejected(self):
        with pytest.raises(NonFiniteScore):
            binarize_scores(ScoreMatrix(np.array([[np.nan]])))

    @given(
        st.lists(
            st.lists(st.floats(-10, 10, allow_nan=False), min_size=3, max_size=3),
            min_size=2,
            max_size=5,
        )
    )
    @settings(max_examples=50)
    def test_output_always_validates(self, rows):
        out = binarize_scores(ScoreMatrix(np.array(rows)))
        validate_attribute_matrix(out.entries)


class TestSplit:
    def test_counts(self, rng):
        from conftest import random_attrs

        s = random_attrs(rng, 6, 10)
        sp = split_meaningful(s, 0.5, seed=3)
        assert sp.s1.n_attrs == 5 and sp.s2.n_attrs == 5
        assert not set(sp.source_columns_s1) & set(sp.source_columns_s2)

    def test_deterministic(self, rng):
        from conftest import random_attrs

        s = random_attrs(rng, 4, 3)
        a = split_meaningful(s, 0.5, seed=7)
        b = split_meaningful(s, 0.5, seed=7)
        assert a.source_columns_s1 == b.source_columns_s1
        assert np.array_equal(a.s2.entries, b.s2.entries)

    def test_too_few(self, rng):
        from conftest import random_attrs

        with pytest.raises(TooFewAttributes):
            split_meaningful(random_attrs(rng, 4, 1), 0.5, seed=0)

    def test_degenerate_ratio(self, rng):
        from conftest import random_attrs

        with pytest.raises(DegenerateSplit):
            split_meaningful(random_attrs(rng, 4, 3), 0.01, seed=0)

    @given(st.integers(2, 12), st.integers(0, 5))
    @settings(max_examples=40)
    def test_cover_property(self, j, seed):
        rng = np.random.default_rng(1)
        from conftest import random_attrs

        s = random_attrs(rng, 3, j)
        sp = split_meaningful(s, 0.5, seed=seed)
        union = set(sp.source_columns_s1) | set(sp.source_columns_s2)
        assert union == set(range(j))
        # columns trace back to their sources
        for pos, src in enumerate(sp.source_columns_s1):
            assert np.array_equal(sp.s1.entries[:, pos], s.entries[:, src])
