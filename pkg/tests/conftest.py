import numpy as np
import pytest


def random_unit_vector(dim, rng):
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_hermitian(dim, rng):
    b = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return b + b.conj().T


def random_unitary(dim, rng):
    # independent of csm.gleason: unitary from the exponential of a Hermitian matrix
    h = random_hermitian(dim, rng)
    vals, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(1j * vals)) @ vecs.conj().T


def random_frame(dim, rng):
    u = random_unitary(dim, rng)
    return [u[:, k] for k in range(dim)]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
