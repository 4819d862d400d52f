"""Shared instance builders for the test suite."""

import numpy as np

from framemult import Multiplier, Symbol, build, new_frame, random_frame, random_symbol


def random_triple(seed, d: int = 4, n: int = 9, lo: float = 0.5, hi: float = 2.0):
    """(m, phi, psi) with independent random frames and a semi-normalized symbol."""
    phi = random_frame(d, n, (seed, 0))
    psi = random_frame(d, n, (seed, 1))
    m = random_symbol(n, lo, hi, (seed, 2))
    return m, phi, psi


def invertible_multiplier(seed, d: int = 4, n: int = 9) -> Multiplier:
    """Random invertible multiplier; redraws the symbol until the proxy passes."""
    phi = random_frame(d, n, (seed, 0))
    psi = random_frame(d, n, (seed, 1))
    for attempt in range(20):
        m = random_symbol(n, 0.5, 2.0, (seed, 2, attempt))
        mult = build(m, phi, psi)
        if mult.inv_diag.invertible:
            return mult
    raise AssertionError(f"no invertible multiplier for seed {seed}")


def scaled_equivalent_multiplier(seed, d: int = 4, n: int = 9) -> Multiplier:
    """Multiplier whose right frame is V(m phi) for a random invertible V."""
    phi = random_frame(d, n, (seed, 0))
    m = random_symbol(n, 0.5, 2.0, (seed, 2))
    v = random_frame(d, d, (seed, 3))  # square, validated invertible
    psi = new_frame(v.synth @ (phi.synth * m.values[np.newaxis, :]))
    return build(m, phi, psi)
