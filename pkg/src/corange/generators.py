"""Seeded test instances: projections, projection words and family members.

Randomness comes from ``numpy.random.Generator`` over the PCG64 bit
generator, so a given seed reproduces the same matrices on every platform
numpy supports.
"""

from dataclasses import dataclass
from itertools import groupby, product

import numpy as np

from .classes import classify
from .numerics import DEFAULT_TOL, InputError, adjoint, as_square, operator_norm

ALPHABET = "PQRSTUVWXYZ"
FAMILIES = ("EP", "DR", "SR", "co-EP", "CoR", "non-CoR")
RESAMPLE_BUDGET = 1000

SQRT3 = np.sqrt(3.0)


class GenerationError(RuntimeError):
    """No instance of the requested family could be produced."""


def make_rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def complex_gaussian(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_unitary(n, seed=None):
    rng = make_rng(seed)
    Q, R = np.linalg.qr(complex_gaussian(rng, (n, n)))
    # fix column phases so the distribution does not depend on LAPACK sign choices
    d = np.diag(R)
    return Q * (d / np.where(np.abs(d) > 0, np.abs(d), 1.0))


def random_projection(n, r, seed=None):
    """Orthogonal projector of rank ``r`` on ``C^n``.

    Built as ``Q Q^*`` with ``Q`` the orthonormalized columns of a seeded
    complex Gaussian ``n x r`` matrix.
    """
    if not 0 <= r <= n:
        raise InputError(f"projection rank {r} outside [0, {n}]")
    if r == 0:
        return np.zeros((n, n), dtype=complex)
    rng = make_rng(seed)
    Q, _ = np.linalg.qr(complex_gaussian(rng, (n, r)))
    P = Q @ adjoint(Q)
    return 0.5 * (P + adjoint(P))


@dataclass(frozen=True)
class ProjectionWord:
    """An ordered product of projection letters such as ``"PQPQ"``."""

    letters: tuple

    def __post_init__(self):
        letters = tuple(self.letters)
        if not letters:
            raise InputError("projection word must be nonempty")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text):
        return cls(tuple(text))

    @property
    def length(self):
        return len(self.letters)

    def canonical(self):
        """Collapse runs of the same letter (projections are idempotent)."""
        return ProjectionWord(tuple(k for k, _ in groupby(self.letters)))

    def reversed(self):
        return ProjectionWord(self.letters[::-1])

    def __str__(self):
        return "".join(map(str, self.letters))


def all_words(alphabet, max_length):
    for length in range(1, max_length + 1):
        for letters in product(alphabet, repeat=length):
            yield ProjectionWord(letters)


def alternating_word(length, start="P", other="Q"):
    return ProjectionWord(tuple(start if i % 2 == 0 else other for i in range(length)))


def is_orthogonal_projector(M, tol=DEFAULT_TOL):
    scale = tol.residual_scale(operator_norm(M))
    return (
        operator_norm(M @ M - M) <= scale
        and operator_norm(M - adjoint(M)) <= scale
    )


def _lookup(projections, letter):
    if isinstance(projections, dict):
        return projections[letter]
    if isinstance(letter, str):
        return projections[ALPHABET.index(letter)]
    return projections[letter]


def projection_product(projections, word, tol=DEFAULT_TOL):
    """Multiply the projections named by ``word`` in order.

    Parameters
    ----------
    projections : dict or sequence
        Letter -> matrix mapping; a sequence is indexed by position in
        ``ALPHABET`` (``"P"`` is item 0, ``"Q"`` item 1, ...) or by integer letters.
    word : ProjectionWord or str

    Raises
    ------
    InputError
        If a referenced matrix is not an orthogonal projector or sizes differ.
    """
    if isinstance(word, str):
        word = ProjectionWord.parse(word)
    mats = {}
    for letter in set(word.letters):
        try:
            M = as_square(_lookup(projections, letter), f"projection {letter}")
        except (KeyError, IndexError, ValueError):
            raise InputError(f"no projection for letter {letter!r}") from None
        if not is_orthogonal_projector(M, tol):
            raise InputError(f"projection {letter}: not an orthogonal projector")
        mats[letter] = M
    sizes = {M.shape[0] for M in mats.values()}
    if len(sizes) != 1:
        raise InputError(f"projections have different sizes: {sorted(sizes)}")
    out = mats[word.letters[0]].copy()
    for letter in word.letters[1:]:
        out = out @ mats[letter]
    return out


def paper_fixture(name):
    """Exact 4x4 fixtures with projection products outside the classical families.

    ``example_p2``: ``T = PQ`` is CoR but neither EP, DR, SR, co-EP nor weak-EP.
    ``example_p3``: ``T = PQR`` is not CoR.
    """
    s = SQRT3
    P = np.diag([1.0, 1.0, 0.0, 0.0]).astype(complex)
    if name == "example_p2":
        Q = np.array([
            [3 / 4, 0, s / 4, 0],
            [0, 1, 0, 0],
            [s / 4, 0, 1 / 4, 0],
            [0, 0, 0, 0],
        ], dtype=complex)
        T = np.array([
            [3 / 4, 0, s / 4, 0],
            [0, 1, 0, 0],
            [0, 0, 0, 0],
            [0, 0, 0, 0],
        ], dtype=complex)
        return {"P": P, "Q": Q, "T": T, "T_adj": adjoint(T)}
    if name == "example_p3":
        Q = np.array([
            [1 / 2, 0, 0, 1 / 2],
            [0, 1, 0, 0],
            [0, 0, 0, 0],
            [1 / 2, 0, 0, 1 / 2],
        ], dtype=complex)
        R = np.array([
            [1, 0, 0, 0],
            [0, 3 / 4, 0, s / 4],
            [0, 0, 1, 0],
            [0, s / 4, 0, 1 / 4],
        ], dtype=complex)
        T = np.array([
            [1 / 2, s / 8, 0, 1 / 8],
            [0, 3 / 4, 0, s / 4],
            [0, 0, 0, 0],
            [0, 0, 0, 0],
        ], dtype=complex)
        T_adj = np.array([
            [1 / 2, 0, 0, 0],
            [s / 8, 3 / 4, 0, 0],
            [0, 0, 0, 0],
            [1 / 8, s / 4, 0, 0],
        ], dtype=complex)
        return {"P": P, "Q": Q, "R": R, "T": T, "T_adj": T_adj}
    raise InputError(f"unknown fixture {name!r}; expected example_p2 or example_p3")


def _block_operator(rng, n, r, A, B):
    """``W [[A, B], [0, 0]] W^*`` for a random unitary ``W``."""
    W = random_unitary(n, rng)
    M = np.zeros((n, n), dtype=complex)
    M[:r, :r] = A
    M[:r, r:] = B
    return W @ M @ adjoint(W)


def _well_conditioned(rng, m, k):
    """Random ``m x k`` matrix with singular values in [0.5, 2]."""
    p = min(m, k)
    U, _ = np.linalg.qr(complex_gaussian(rng, (m, p)))
    V, _ = np.linalg.qr(complex_gaussian(rng, (k, p)))
    return (U * rng.uniform(0.5, 2.0, p)) @ adjoint(V)


def random_projection_pair(n, seed=None, ranks=None):
    rng = make_rng(seed)
    if ranks is None:
        ranks = rng.integers(1, n + 1, size=2)
    return {
        "P": random_projection(n, int(ranks[0]), rng),
        "Q": random_projection(n, int(ranks[1]), rng),
    }


def random_two_projection_word(n, seed=None, max_length=6):
    rng = make_rng(seed)
    pair = random_projection_pair(n, rng)
    length = int(rng.integers(1, max_length + 1))
    word = ProjectionWord(tuple(rng.choice(["P", "Q"], size=length)))
    return projection_product(pair, word)


def _draw(family, n, rng):
    if family == "EP":
        k = int(rng.integers(1, n + 1))
        return _block_operator(rng, n, k, _well_conditioned(rng, k, k), np.zeros((k, n - k)))
    if family == "DR":
        r = int(rng.integers(1, n // 2 + 1))
        B = _well_conditioned(rng, r, n - r)
        A = B @ complex_gaussian(rng, (n - r, r))
        return _block_operator(rng, n, r, A, B)
    if family == "co-EP":
        r = n // 2
        return _block_operator(
            rng, n, r, complex_gaussian(rng, (r, r)), _well_conditioned(rng, r, r)
        )
    if family == "SR":
        r = int(rng.integers((n + 1) // 2, n + 1))
        A = complex_gaussian(rng, (r, r))
        if r == n:
            A = _well_conditioned(rng, r, r)
        return _block_operator(rng, n, r, A, _well_conditioned(rng, r, n - r))
    if family == "CoR":
        return random_two_projection_word(n, rng)
    if family == "non-CoR":
        ranks = rng.integers((n + 1) // 2, n, size=3) if n > 2 else [1, 1, 1]
        mats = {c: random_projection(n, int(k), rng) for c, k in zip("PQR", ranks)}
        length = int(rng.integers(3, 7))
        letters = list("PQR") + list(rng.choice(list("PQR"), size=length - 3))
        rng.shuffle(letters)
        return projection_product(mats, ProjectionWord(tuple(letters)))
    raise InputError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def _member(family, report):
    return {
        "EP": report.ep,
        "DR": report.dr,
        "SR": report.sr,
        "co-EP": report.co_ep,
        "CoR": report.cor,
        "non-CoR": not report.cor,
    }[family]


def random_class_instance(family, n, seed=None, tol=DEFAULT_TOL):
    """Random ``n x n`` matrix that classifies into ``family``.

    Candidates are drawn from a construction aimed at the family and kept
    only once :func:`~corange.classes.classify` confirms membership.

    Raises
    ------
    GenerationError
        When ``co-EP`` is requested for odd ``n`` or no candidate passes
        within ``RESAMPLE_BUDGET`` draws.
    """
    if family not in FAMILIES:
        raise InputError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if n < 1 or (n < 2 and family != "CoR"):
        raise GenerationError(f"family {family} needs n >= 2, got {n}")
    if family == "co-EP" and n % 2:
        raise GenerationError(
            f"co-EP requires dim R(T) = dim N(T*), impossible for odd n={n}"
        )
    rng = make_rng(seed)
    for _ in range(RESAMPLE_BUDGET):
        T = _draw(family, n, rng)
        if _member(family, classify(T, tol)):
            return T
    raise GenerationError(
        f"no {family} instance of size {n} after {RESAMPLE_BUDGET} draws"
    )
