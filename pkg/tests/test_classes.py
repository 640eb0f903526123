import numpy as np
import pytest

from corange.classes import (
    NotCoRError,
    classify,
    classify_via_blocks,
    cor_structure,
    dual_route_disagreements,
    implication_violations,
)
from corange.generators import (
    ProjectionWord,
    alternating_word,
    all_words,
    projection_product,
    random_class_instance,
    random_projection,
    random_projection_pair,
)
from corange.numerics import InputError
from instances import mixed_matrices, rng_for

NOT_IN_DEFINITION_CLASSES = dict(ep=False, dr=False, sr=False, co_ep=False, weak_ep=False)


def test_fixture_p2(p2):
    report = classify(p2["T"])
    assert report.flags() == dict(NOT_IN_DEFINITION_CLASSES, cor=True, group_invertible=True)
    d = report.diagnostics
    assert (d.dim_range, d.dim_range_adj, d.dim_cap, d.dim_sum) == (2, 2, 1, 3)


def test_fixture_p3_not_cor(p3):
    report = classify(p3["T"])
    assert report.cor is False
    assert report.diagnostics.coincidence_residual == pytest.approx(0.25, abs=1e-12)


def test_identity():
    assert classify(np.eye(3)).flags() == dict(
        ep=True, dr=False, sr=True, co_ep=False, weak_ep=True, cor=True, group_invertible=True
    )


def test_zero_matrix():
    flags = classify(np.zeros((3, 3))).flags()
    assert flags["dr"] and flags["ep"] and flags["cor"] and not flags["sr"]
    blocks = classify_via_blocks(np.zeros((3, 3)))
    assert blocks.dr and not blocks.sr and blocks.cor


def test_nilpotent_is_co_ep():
    T = np.array([[0, 1], [0, 0]])
    report = classify(T)
    assert report.dr and report.sr and report.co_ep and report.cor
    assert not report.group_invertible
    blocks = classify_via_blocks(T)
    assert blocks.dr and blocks.sr and blocks.co_ep and blocks.cor
    assert blocks.diagnostics.rank_B == 1


def test_fixture_blocks(p2):
    report = classify_via_blocks(p2["T"])
    assert report.diagnostics.rank_B == 1
    assert not report.dr and not report.sr and not report.co_ep
    assert report.cor
    assert report.diagnostics.coincidence_residual <= 1e-15


def test_self_adjoint_invertible_blocks():
    H = np.array([[2, 1j], [-1j, 3]])
    report = classify_via_blocks(H)
    assert report.dr is False and report.sr is True and report.cor is True


def test_invertible_non_normal_is_ep_but_not_cor():
    T = np.array([[1.0, 1.0], [0.0, 1.0]])
    report = classify(T)
    assert report.ep and report.weak_ep and report.group_invertible
    assert not report.cor


def test_borderline_flagged():
    T = np.eye(2, dtype=complex)
    T[0, 1] = 5e-10
    report = classify(T)
    assert "cor" in report.diagnostics.borderline


def test_rejects_rectangular():
    with pytest.raises(InputError, match="not square"):
        classify(np.ones((2, 3)))
    with pytest.raises(InputError, match="not square"):
        classify_via_blocks(np.ones((3, 2)))


class TestCorStructure:
    def test_projector(self):
        s = cor_structure(random_projection(5, 3, 1))
        assert s.all()

    def test_fixture(self, p2):
        assert cor_structure(p2["T"]).all()

    @pytest.mark.parametrize("seed", range(10))
    def test_alternating_pqpq_dim8(self, seed):
        pair = random_projection_pair(8, seed)
        assert cor_structure(projection_product(pair, "PQPQ")).all()

    def test_rejects_non_cor(self, p3):
        with pytest.raises(NotCoRError) as info:
            cor_structure(p3["T"])
        assert info.value.coincidence_residual == pytest.approx(0.25, abs=1e-12)


@pytest.mark.parametrize("i,T", list(mixed_matrices(300, tag=41)))
def test_dual_route_and_implications(i, T):
    assert dual_route_disagreements(T) == []
    report = classify(T)
    assert implication_violations(report) == []
    if report.cor:
        assert cor_structure(T).all()


@pytest.mark.parametrize("n", [3, 6, 9])
def test_projection_products_group_invertible(n):
    pair = random_projection_pair(n, rng_for(7, n))
    for word in all_words("PQ", 5):
        assert classify(projection_product(pair, word)).group_invertible, str(word)


def test_cor_checks_against_family_generators():
    for seed in range(10):
        assert classify(random_class_instance("DR", 7, seed)).cor
        assert classify(random_class_instance("CoR", 7, seed)).cor
        assert not classify(random_class_instance("non-CoR", 7, seed)).cor


def test_alternating_reverse_word_is_adjoint():
    pair = random_projection_pair(5, 3)
    W = projection_product(pair, alternating_word(4))
    Wr = projection_product(pair, ProjectionWord.parse("QPQP"))
    np.testing.assert_allclose(Wr, W.conj().T, atol=1e-14)
