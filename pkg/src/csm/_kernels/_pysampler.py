"""Pure numpy implementation of the trajectory sampling kernel.

Must stay bit-for-bit identical to ``_csampler.pyx``.
"""

import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
MIX1 = np.uint64(0xBF58476D1CE4E5B9)
MIX2 = np.uint64(0x94D049BB133111EB)
INV_2_53 = 1.0 / 9007199254740992.0

CHUNK = 1 << 17


def splitmix64(x):
    z = np.asarray(x, dtype=np.uint64) + GOLDEN
    z = (z ^ (z >> np.uint64(30))) * MIX1
    z = (z ^ (z >> np.uint64(27))) * MIX2
    return z ^ (z >> np.uint64(31))


def trajectory_keys(seed: int, start: int, stop: int) -> np.ndarray:
    base = splitmix64(np.array([seed & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64))
    t = np.arange(start, stop, dtype=np.uint64)
    return splitmix64(base ^ t)


def uniforms(keys: np.ndarray, step: int) -> np.ndarray:
    z = splitmix64(keys + np.uint64(step) * GOLDEN)
    return (z >> np.uint64(11)).astype(np.float64) * INV_2_53


def sample_codes(cdf: np.ndarray, seed: int, start: int, stop: int) -> np.ndarray:
    """Outcome codes for trajectories ``start..stop-1``.

    ``cdf[s, prev, :]`` is the cumulative outcome distribution at step ``s``
    given outcome ``prev`` at step ``s - 1`` (row 0 is used for step 0). The
    code is the mixed-radix number of the outcome tuple, first step most
    significant.
    """
    n_steps, _, n_out = cdf.shape
    out = np.empty(stop - start, dtype=np.int64)
    with np.errstate(over="ignore"):
        for lo in range(start, stop, CHUNK):
            hi = min(lo + CHUNK, stop)
            keys = trajectory_keys(seed, lo, hi)
            prev = np.zeros(hi - lo, dtype=np.int64)
            code = np.zeros(hi - lo, dtype=np.int64)
            for s in range(n_steps):
                u = uniforms(keys, s)
                rows = cdf[s, prev, : n_out - 1]
                outcome = np.count_nonzero(u[:, None] >= rows, axis=1)
                code = code * n_out + outcome
                prev = outcome
            out[lo - start : hi - start] = code
    return out
