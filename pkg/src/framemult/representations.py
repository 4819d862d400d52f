"""Dual-free representations of the inverse of a multiplier.

For an invertible multiplier M with semi-normalized symbol, the inverse can
be written against ANY dual frame of the left frame (or of the right frame)
at the price of one correction operator:

    M^{-1} = mult(1/m, canonical dual of Psi, Phi^d) + Gamma* U_{Phi^d}
    M^{-1} = mult(1/m, Psi^d, canonical dual of Phi) + T_{Psi^d} Theta

Gamma and Theta are the unique operators making these hold for every dual.
Gamma vanishes exactly when the right frame is equivalent to the
symbol-scaled left frame, which is also exactly when the correction-free
formula holds for every dual; equivalence_criterion packages that three-way
agreement.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .errors import InvalidDual
from .frames import (
    DualFrame,
    Frame,
    canonical_dual,
    equivalence_map,
    random_dual,
    scale_by_symbol,
)
from .linalg import DEFAULT_TOL, Tol, op_norm
from .multiplier import Multiplier, build, invert
from .symbols import reciprocal

__all__ = [
    "RepResult",
    "EquivalenceVerdict",
    "gamma_of",
    "verify_gamma_decomposition",
    "theta_of",
    "verify_theta_decomposition",
    "equivalence_criterion",
    "sample_duals",
]

# Dual-frame sampling policy for universally quantified checks: the canonical
# dual plus this many random duals with unit-operator-norm W parameters.
DUAL_SAMPLE_COUNT = 20
_DUAL_SAMPLE_SEED = 2026


@dataclass(frozen=True)
class RepResult:
    """A correction operator together with its diagnostic residuals.

    op is N x d (it maps vectors to coefficient sequences). The
    annihilation_residual is the norm of the bare synthesis composed with op;
    masked_annihilation_residual inserts the symbol diagonal between the two
    (conj(m) for Gamma, m for Theta), which is the combination the inverse
    algebra actually cancels. decomposition_residuals is filled by the
    verify_* pass, one (dual index, residual) pair per sampled dual.
    """

    op: np.ndarray
    kind: str  # "Gamma" or "Theta"
    annihilation_residual: float
    masked_annihilation_residual: float
    decomposition_residuals: tuple[tuple[int, float], ...] = ()


class EquivalenceVerdict(NamedTuple):
    """Three booleans that must agree on every clear-margin instance."""

    equivalent: bool
    gamma_zero: bool
    all_duals_formula: bool


def sample_duals(
    f: Frame,
    count: int = DUAL_SAMPLE_COUNT,
    rng: np.random.Generator | None = None,
    tol: Tol = DEFAULT_TOL,
) -> list[DualFrame]:
    """Canonical dual plus `count` random duals with unit-op-norm W matrices."""
    if rng is None:
        rng = np.random.default_rng(_DUAL_SAMPLE_SEED)
    duals = [canonical_dual(f, tol)]
    for _ in range(count):
        w = rng.standard_normal((f.dim, f.count)) + 1j * rng.standard_normal((f.dim, f.count))
        norm = op_norm(w)
        if norm > 0.0:
            w = w / norm
        duals.append(random_dual(f, w, tol))
    return duals


def _check_dual_of(dual: DualFrame, parent: Frame, tol: Tol) -> None:
    if dual.frame.dim != parent.dim or dual.frame.count != parent.count:
        raise InvalidDual(
            f"dual shape {dual.frame.dim}x{dual.frame.count} does not match "
            f"parent {parent.dim}x{parent.count}"
        )
    recon = dual.frame.synth @ parent.analysis_op
    if op_norm(recon - np.eye(parent.dim)) > tol.rel_eq * max(1.0, op_norm(recon)):
        raise InvalidDual("reconstruction against the stated parent fails")


def gamma_of(mult: Multiplier, tol: Tol = DEFAULT_TOL) -> RepResult:
    """Gamma = U_Phi (M^{-1})* - diag(1/conj(m)) U_Psi S_Psi^{-1}, as N x d.

    Equivalent characterization: Gamma* is the gap between M^{-1} T_Phi and
    S_Psi^{-1} T_Psi diag(1/m).
    """
    minv = invert(mult, tol)
    phi, psi = mult.left, mult.right
    m = mult.symbol.values
    inv_conj_m = np.conj(reciprocal(mult.symbol).values)  # 1/conj(m); ZeroEntry guard
    dual_analysis = np.linalg.solve(psi.cached_S, psi.synth).conj().T  # U_Psi S_Psi^{-1}
    gamma = phi.analysis_op @ minv.conj().T - inv_conj_m[:, np.newaxis] * dual_analysis
    return RepResult(
        op=gamma,
        kind="Gamma",
        annihilation_residual=op_norm(psi.synth @ gamma),
        masked_annihilation_residual=op_norm(
            (psi.synth * np.conj(m)[np.newaxis, :]) @ gamma
        ),
    )


def theta_of(mult: Multiplier, tol: Tol = DEFAULT_TOL) -> RepResult:
    """Theta = U_Psi M^{-1} - diag(1/m) U_Phi S_Phi^{-1}, as N x d."""
    minv = invert(mult, tol)
    phi, psi = mult.left, mult.right
    m = mult.symbol.values
    inv_m = reciprocal(mult.symbol).values  # ZeroEntry guard
    dual_analysis = np.linalg.solve(phi.cached_S, phi.synth).conj().T  # U_Phi S_Phi^{-1}
    theta = psi.analysis_op @ minv - inv_m[:, np.newaxis] * dual_analysis
    return RepResult(
        op=theta,
        kind="Theta",
        annihilation_residual=op_norm(phi.synth @ theta),
        masked_annihilation_residual=op_norm((phi.synth * m[np.newaxis, :]) @ theta),
    )


def verify_gamma_decomposition(
    mult: Multiplier,
    g: RepResult,
    duals: list[DualFrame],
    tol: Tol = DEFAULT_TOL,
) -> RepResult:
    """Residuals of M^{-1} = mult(1/m, canonical dual of Psi, Phi^d) + Gamma* U_{Phi^d}.

    One residual per supplied dual of the left frame; each dual is first
    re-verified against that frame.
    """
    minv = invert(mult, tol)
    inv_symbol = reciprocal(mult.symbol)
    psi_tilde = canonical_dual(mult.right, tol).frame
    gamma_adj = g.op.conj().T
    residuals = []
    for idx, dual in enumerate(duals):
        _check_dual_of(dual, mult.left, tol)
        reconstructed = build(inv_symbol, psi_tilde, dual.frame, tol).matrix
        reconstructed = reconstructed + gamma_adj @ dual.frame.analysis_op
        residuals.append((idx, op_norm(minv - reconstructed)))
    return replace(g, decomposition_residuals=tuple(residuals))


def verify_theta_decomposition(
    mult: Multiplier,
    t: RepResult,
    duals: list[DualFrame],
    tol: Tol = DEFAULT_TOL,
) -> RepResult:
    """Residuals of M^{-1} = mult(1/m, Psi^d, canonical dual of Phi) + T_{Psi^d} Theta."""
    minv = invert(mult, tol)
    inv_symbol = reciprocal(mult.symbol)
    phi_tilde = canonical_dual(mult.left, tol).frame
    residuals = []
    for idx, dual in enumerate(duals):
        _check_dual_of(dual, mult.right, tol)
        reconstructed = build(inv_symbol, dual.frame, phi_tilde, tol).matrix
        reconstructed = reconstructed + dual.frame.synth @ t.op
        residuals.append((idx, op_norm(minv - reconstructed)))
    return replace(t, decomposition_residuals=tuple(residuals))


def equivalence_criterion(mult: Multiplier, tol: Tol = DEFAULT_TOL) -> EquivalenceVerdict:
    """Three equivalent readings of 'the right frame is the symbol-scaled left frame up to an invertible map'.

    equivalent: an invertible V with V(m_n phi_n) = psi_n exists.
    gamma_zero: the Gamma correction vanishes.
    all_duals_formula: the correction-free inverse formula holds against the
    canonical dual and a sample of random duals of the left frame.

    Residual thresholds are scaled by max(1, ||M^{-1}||).
    """
    minv = invert(mult, tol)
    scale = max(1.0, op_norm(minv))

    scaled = scale_by_symbol(mult.left, mult.symbol, tol)
    equivalent = equivalence_map(scaled, mult.right, tol) is not None

    g = gamma_of(mult, tol)
    gamma_zero = op_norm(g.op) <= tol.rel_eq * scale

    inv_symbol = reciprocal(mult.symbol)
    psi_tilde = canonical_dual(mult.right, tol).frame
    rng = np.random.default_rng(_DUAL_SAMPLE_SEED)
    all_duals = True
    for dual in sample_duals(mult.left, DUAL_SAMPLE_COUNT, rng, tol):
        formula = build(inv_symbol, psi_tilde, dual.frame, tol).matrix
        if op_norm(minv - formula) > tol.rel_eq * scale:
            all_duals = False
            break
    return EquivalenceVerdict(
        equivalent=equivalent, gamma_zero=gamma_zero, all_duals_formula=all_duals
    )
