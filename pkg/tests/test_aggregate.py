"""Aggregation statistics against an independent brute-force oracle."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tweetstylo.aggregate import (
    aggregate_user,
    build_user_matrix,
    describe_series,
    read_matrix_csv,
    write_matrix_csv,
)
from tweetstylo.schema import (
    N_BASE,
    N_USER_COLUMNS,
    STATS,
    base_feature_groups,
    base_features,
    schema_hash,
    user_columns,
)


def oracle_describe(values):
    """Brute-force reimplementation: sorting + explicit interpolation."""
    n = len(values)
    mean = sum(values) / n
    ordered = sorted(values)

    def quantile(p):
        pos = (n - 1) * p
        lo = math.floor(pos)
        hi = math.ceil(pos)
        frac = pos - lo
        return ordered[lo] * (1 - frac) + ordered[hi] * frac

    if n > 1:
        var = sum((x - mean) ** 2 for x in values) / (n - 1)
        std = math.sqrt(var)
    else:
        std = 0.0
    return (
        mean,
        quantile(0.5),
        std,
        ordered[0],
        ordered[-1],
        quantile(0.25),
        quantile(0.75),
    )


class TestDescribeSeries:
    def test_worked_example(self):
        got = describe_series([1, 2, 3, 4])
        expected = (2.5, 2.5, 1.2909944487, 1.0, 4.0, 1.75, 3.25)
        for g, e in zip(got, expected):
            assert g == pytest.approx(e, abs=1e-9)

    def test_singleton(self):
        assert describe_series([5]) == (5.0, 5.0, 0.0, 5.0, 5.0, 5.0, 5.0)

    def test_constant_series(self):
        got = describe_series([3.5] * 17)
        assert got == (3.5, 3.5, 0.0, 3.5, 3.5, 3.5, 3.5)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            describe_series([])

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            describe_series([1.0, float("nan")])

    @given(
        st.lists(
            st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False),
            min_size=1,
            max_size=200,
        )
    )
    def test_matches_oracle(self, values):
        got = describe_series(values)
        expected = oracle_describe(values)
        for g, e, name in zip(got, expected, STATS):
            assert g == pytest.approx(e, abs=1e-6, rel=1e-9), name

    @given(
        st.lists(
            st.floats(-100, 100, allow_nan=False, allow_infinity=False),
            min_size=1,
            max_size=50,
        )
    )
    def test_order_statistics_consistent(self, values):
        mean, med, std, lo, hi, q1, q3 = describe_series(values)
        assert lo <= q1 <= med <= q3 <= hi
        assert lo <= mean <= hi
        assert std >= 0

    @given(
        st.lists(
            st.floats(-100, 100, allow_nan=False, allow_infinity=False),
            min_size=2,
            max_size=40,
        ),
        st.randoms(),
    )
    def test_permutation_invariant(self, values, rnd):
        shuffled = list(values)
        rnd.shuffle(shuffled)
        assert describe_series(values) == describe_series(shuffled)


class TestSchema:
    def test_sizes(self):
        assert N_BASE == 124
        assert N_USER_COLUMNS == 868
        assert len(base_features()) == 124
        assert len(user_columns()) == 868

    def test_group_sizes(self):
        groups = {}
        for _, g in base_feature_groups():
            groups[g] = groups.get(g, 0) + 1
        assert groups == {
            "emotion": 8,
            "idiom": 44,
            "lexical": 22,
            "syntactical": 20,
            "semantic": 16,
            "structural": 5,
            "subject_specific": 9,
        }

    def test_column_name_style(self):
        cols = user_columns()
        assert "mean(anger)" in cols
        assert "q3(idiom_44)" in cols
        assert "std(num_coord_clauses)" in cols
        feats = base_features()
        assert cols[0] == f"mean({feats[0]})"
        assert cols[7] == f"mean({feats[1]})"

    def test_schema_hash_stable(self):
        assert schema_hash() == schema_hash()
        assert len(schema_hash()) == 64


class TestUserMatrix:
    def vectors(self, seed, n):
        rng = np.random.default_rng(seed)
        return rng.uniform(0, 5, size=(n, N_BASE))

    def test_shape_identity(self):
        per_user = {
            "u1": ("conspiracy", self.vectors(1, 10)),
            "u2": ("control", self.vectors(2, 10)),
        }
        user_ids, labels, matrix = build_user_matrix(per_user)
        assert user_ids == ["u1", "u2"]
        assert labels == ["conspiracy", "control"]
        assert matrix.shape == (2, 868)

    def test_constant_feature(self):
        block = np.ones((10, N_BASE)) * 7.0
        row = aggregate_user(block)
        cols = user_columns()
        named = dict(zip(cols, row))
        assert named["mean(num_words)"] == 7.0
        assert named["std(num_words)"] == 0.0

    def test_q3_from_series_oracle(self):
        block = np.zeros((4, N_BASE))
        feats = base_features()
        idx = feats.index("num_sentences")
        block[:, idx] = [1, 2, 3, 4]
        row = aggregate_user(block)
        named = dict(zip(user_columns(), row))
        assert named["q3(num_sentences)"] == pytest.approx(3.25)

    def test_tweet_permutation_invariance(self):
        block = self.vectors(3, 25)
        rng = np.random.default_rng(0)
        perm = rng.permutation(25)
        assert np.array_equal(aggregate_user(block), aggregate_user(block[perm]))

    def test_quartile_ordering_holds_everywhere(self):
        row = aggregate_user(self.vectors(9, 37))
        for f in range(N_BASE):
            mean, med, std, lo, hi, q1, q3 = row[f * 7 : f * 7 + 7]
            assert lo <= q1 <= med <= q3 <= hi
            assert lo <= mean <= hi
            assert std >= 0

    def test_empty_user_rejected(self):
        with pytest.raises(ValueError):
            build_user_matrix({"u": ("control", [])})

    def test_csv_roundtrip_with_hash(self, tmp_path):
        per_user = {
            "a": ("conspiracy", self.vectors(4, 12)),
            "b": ("control", self.vectors(5, 15)),
        }
        user_ids, labels, matrix = build_user_matrix(per_user)
        path = tmp_path / "users.csv"
        write_matrix_csv(path, user_ids, labels, matrix)
        head = path.read_text(encoding="utf-8").splitlines()[0]
        assert head == f"# schema_hash={schema_hash()}"
        rid, rlab, rmat = read_matrix_csv(path)
        assert rid == user_ids
        assert rlab == labels
        assert np.array_equal(rmat, matrix)

    def test_csv_rejects_wrong_hash(self, tmp_path):
        path = tmp_path / "bad.csv"
        cols = ",".join(user_columns())
        path.write_text(f"# schema_hash=deadbeef\nuser_id,label,{cols}\n")
        with pytest.raises(ValueError, match="schema hash"):
            read_matrix_csv(path)
