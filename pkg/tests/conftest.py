import numpy as np
import pytest

from corpusdist import Corpus


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


def random_corpus(rng, n, q, scale=1.0, offset=0.0):
    return Corpus.from_matrix(offset + scale * rng.standard_normal((n, q)))


def random_pair(rng, n_a, n_b, q):
    return random_corpus(rng, n_a, q), random_corpus(rng, n_b, q)
