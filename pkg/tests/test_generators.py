import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corange.classes import classify
from corange.generators import (
    FAMILIES,
    GenerationError,
    ProjectionWord,
    alternating_word,
    paper_fixture,
    projection_product,
    random_class_instance,
    random_projection,
    random_projection_pair,
)
from corange.numerics import InputError, adjoint, numerical_rank
from corange.subspaces import column_space, subspace_sum
from instances import projection_pairs
from oracles import exact_fixture, to_numpy

S3 = np.sqrt(3)


class TestRandomProjection:
    def test_rank_zero(self):
        assert np.all(random_projection(4, 0, 1) == 0)

    def test_full_rank(self):
        np.testing.assert_allclose(random_projection(4, 4, 1), np.eye(4), atol=1e-14)

    def test_seed_42(self):
        P = random_projection(4, 2, 42)
        np.testing.assert_allclose(P @ P, P, atol=1e-14)
        np.testing.assert_allclose(P, adjoint(P), atol=0)
        assert numerical_rank(P) == 2

    def test_deterministic(self):
        assert np.array_equal(random_projection(6, 3, 123), random_projection(6, 3, 123))

    def test_rank_too_large(self):
        with pytest.raises(InputError):
            random_projection(3, 4, 0)


class TestProjectionWord:
    def test_canonical(self):
        assert ProjectionWord.parse("PPQQQPQ").canonical() == ProjectionWord.parse("PQPQ")

    def test_empty(self):
        with pytest.raises(InputError):
            ProjectionWord(())

    @given(st.text(alphabet="PQ", min_size=1, max_size=8), st.integers(0, 2**31))
    @settings(max_examples=60, deadline=None)
    def test_collapsing_runs_keeps_product(self, text, seed):
        pair = random_projection_pair(5, seed)
        word = ProjectionWord.parse(text)
        np.testing.assert_allclose(
            projection_product(pair, word), projection_product(pair, word.canonical()), atol=1e-12
        )


class TestProjectionProduct:
    def test_single_letter(self):
        pair = random_projection_pair(4, 0)
        np.testing.assert_allclose(projection_product(pair, "P"), pair["P"])

    def test_p2_fixture(self):
        f = paper_fixture("example_p2")
        np.testing.assert_allclose(projection_product(f, "PQ"), f["T"], atol=1e-15)

    def test_p3_fixture(self):
        f = paper_fixture("example_p3")
        np.testing.assert_allclose(projection_product(f, "PQR"), f["T"], atol=1e-15)

    def test_sequence_input(self):
        f = paper_fixture("example_p2")
        np.testing.assert_allclose(projection_product([f["P"], f["Q"]], "PQ"), f["T"], atol=1e-15)

    def test_rejects_non_projector(self):
        with pytest.raises(InputError, match="not an orthogonal projector"):
            projection_product({"P": np.eye(3), "Q": np.ones((3, 3))}, "PQ")

    def test_rejects_size_mismatch(self):
        with pytest.raises(InputError, match="sizes"):
            projection_product({"P": np.eye(3), "Q": np.eye(4)}, "PQ")

    def test_missing_letter(self):
        with pytest.raises(InputError, match="no projection"):
            projection_product({"P": np.eye(3)}, "PQ")

    @pytest.mark.parametrize("seed", range(200))
    def test_two_letter_words_are_cor(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 13))
        pair = random_projection_pair(n, seed)
        word = ProjectionWord(tuple(rng.choice(["P", "Q"], size=int(rng.integers(1, 7)))))
        assert classify(projection_product(pair, word)).cor


class TestFixtures:
    def test_p2_entries(self):
        f = paper_fixture("example_p2")
        assert f["Q"][0, 0] == 0.75
        assert f["Q"][0, 2] == pytest.approx(S3 / 4, abs=1e-15)

    def test_p3_entries(self):
        T = paper_fixture("example_p3")["T"]
        assert T[0, 0] == 0.5
        assert T[0, 1] == pytest.approx(S3 / 8, abs=1e-15)
        assert T[0, 3] == 0.125

    @pytest.mark.parametrize("name", ["example_p2", "example_p3"])
    def test_match_exact(self, name):
        f, exact = paper_fixture(name), exact_fixture(name)
        for key in exact:
            np.testing.assert_allclose(f[key], to_numpy(exact[key]), atol=1e-15)
        np.testing.assert_allclose(f["T_adj"], adjoint(f["T"]), atol=0)

    def test_products(self):
        f = paper_fixture("example_p2")
        np.testing.assert_allclose(f["P"] @ f["Q"], f["T"], atol=1e-9)

    def test_unknown(self):
        with pytest.raises(InputError, match="unknown fixture"):
            paper_fixture("example_p4")


class TestClassInstances:
    @pytest.mark.parametrize("family", FAMILIES)
    @pytest.mark.parametrize("seed", range(8))
    def test_membership(self, family, seed):
        n = 4 + 2 * (seed % 4)
        T = random_class_instance(family, n, seed)
        report = classify(T)
        expected = {
            "EP": report.ep, "DR": report.dr, "SR": report.sr, "co-EP": report.co_ep,
            "CoR": report.cor, "non-CoR": not report.cor,
        }
        assert expected[family]

    def test_co_ep_odd_fails(self):
        with pytest.raises(GenerationError, match="odd"):
            random_class_instance("co-EP", 5, 0)

    def test_cor_seed_7(self):
        assert classify(random_class_instance("CoR", 4, 7)).cor

    def test_dr_any_seed(self):
        for seed in range(20):
            assert classify(random_class_instance("DR", 5, seed)).dr

    def test_unknown_family(self):
        with pytest.raises(InputError):
            random_class_instance("EQ", 4, 0)

    def test_budget_exhaustion(self, monkeypatch):
        import corange.generators as g

        monkeypatch.setattr(g, "RESAMPLE_BUDGET", 3)
        monkeypatch.setattr(g, "_draw", lambda family, n, rng: np.eye(n))
        with pytest.raises(GenerationError, match="3 draws"):
            g.random_class_instance("DR", 4, 0)

    def test_reproducible(self):
        a = random_class_instance("SR", 7, 99)
        b = random_class_instance("SR", 7, 99)
        assert np.array_equal(a, b)


@pytest.mark.parametrize("i,pair", list(projection_pairs(30, 7, tag=62)))
def test_same_length_words(i, pair):
    for length in (2, 4, 6):
        W = projection_product(pair, alternating_word(length))
        Wr = projection_product(pair, alternating_word(length, "Q", "P"))
        total = subspace_sum(column_space(W), column_space(Wr))
        assert total.dim == numerical_rank(W + Wr)
