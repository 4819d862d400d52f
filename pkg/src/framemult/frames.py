"""Frames on C^d: synthesis/analysis matrices, bounds, duals, kernel projections.

A frame is stored through its synthesis matrix T (d x N, column n is the
vector phi_n). The inner product is linear in the first argument, so the
analysis operator is the conjugate transpose: (U f)_n = <f, phi_n>. The frame
operator S = T T* is cached together with its extremal eigenvalues, the
optimal frame bounds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidDual, NotAFrame
from .linalg import DEFAULT_TOL, Tol, as_matrix, herm_eig_extremes, op_norm, pinv, sv_extremes
from .symbols import Symbol

__all__ = [
    "Frame",
    "DualFrame",
    "new_frame",
    "analysis",
    "synthesis",
    "frame_bounds",
    "canonical_dual",
    "random_dual",
    "proj_ker_synthesis",
    "is_riesz_basis",
    "scale_by_symbol",
    "equivalence_map",
]


@dataclass(frozen=True)
class Frame:
    """Validated frame: rank(synth) = d is guaranteed at construction."""

    dim: int
    count: int
    synth: np.ndarray  # d x N, column n is phi_n
    cached_S: np.ndarray  # d x d frame operator T T*
    bounds: tuple[float, float]  # optimal (A, B), 0 < A <= B

    @property
    def analysis_op(self) -> np.ndarray:
        """The N x d analysis matrix U = T*."""
        return self.synth.conj().T


@dataclass(frozen=True)
class DualFrame:
    """A dual of `parent`: synthesis T_dual = S^{-1}T_parent + v_part."""

    frame: Frame
    parent: Frame
    v_part: np.ndarray  # d x N; zero exactly for the canonical dual


def _freeze(mat: np.ndarray) -> np.ndarray:
    out = np.array(mat, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


def new_frame(columns, tol: Tol = DEFAULT_TOL) -> Frame:
    """Validating constructor: rejects sequences that do not span C^d.

    The rank test is spectral: lambda_min(S) must exceed inv_cond times
    lambda_max(S).
    """
    synth = as_matrix(columns)
    d, n = synth.shape
    if d < 1 or n < 1:
        raise NotAFrame(f"empty synthesis matrix of shape {d}x{n}")
    if n < d:
        raise NotAFrame(f"{n} vectors cannot span a {d}-dimensional space")
    s = synth @ synth.conj().T
    lo, hi = herm_eig_extremes(s, tol)
    if hi <= 0.0 or lo <= tol.inv_cond * hi:
        raise NotAFrame(
            f"rank-deficient sequence: lambda_min(S)={lo:.3e} vs lambda_max(S)={hi:.3e}"
        )
    return Frame(dim=d, count=n, synth=_freeze(synth), cached_S=_freeze(s), bounds=(lo, hi))


def analysis(f: Frame, vec) -> np.ndarray:
    """Coefficients (<x, phi_n>)_n of a vector x in C^d."""
    x = np.asarray(vec, dtype=np.complex128).reshape(-1)
    if x.shape[0] != f.dim:
        raise DimensionMismatch(f"vector has length {x.shape[0]}, frame dimension is {f.dim}")
    return f.analysis_op @ x


def synthesis(f: Frame, coeffs) -> np.ndarray:
    """The vector sum over n of c_n phi_n."""
    c = np.asarray(coeffs, dtype=np.complex128).reshape(-1)
    if c.shape[0] != f.count:
        raise DimensionMismatch(f"coefficients have length {c.shape[0]}, frame count is {f.count}")
    return f.synth @ c


def frame_bounds(f: Frame) -> tuple[float, float]:
    """Optimal bounds (A, B) = extremal eigenvalues of the frame operator."""
    return f.bounds


def _solve_frame_op(f: Frame, rhs: np.ndarray) -> np.ndarray:
    # S is Hermitian positive definite for every validated Frame.
    return np.linalg.solve(f.cached_S, rhs)


def _check_duality(dual_synth: np.ndarray, parent: Frame, tol: Tol) -> None:
    recon = dual_synth @ parent.analysis_op
    eye = np.eye(parent.dim)
    if op_norm(recon - eye) > tol.rel_eq * max(1.0, op_norm(recon)):
        raise InvalidDual("reconstruction T_dual U_parent deviates from the identity")


def canonical_dual(f: Frame, tol: Tol = DEFAULT_TOL) -> DualFrame:
    """The dual with columns S^{-1} phi_n; its frame operator is S^{-1}."""
    dual_synth = _solve_frame_op(f, f.synth)
    _check_duality(dual_synth, f, tol)
    dual = new_frame(dual_synth, tol)
    return DualFrame(frame=dual, parent=f, v_part=_freeze(np.zeros_like(f.synth)))


def random_dual(f: Frame, w, tol: Tol = DEFAULT_TOL) -> DualFrame:
    """The dual S^{-1}T + W(I - U S^{-1} T) carved out by a free d x N matrix W.

    W = 0 recovers the canonical dual; for a Riesz basis every W does, since
    the kernel projection vanishes.
    """
    w_mat = as_matrix(w)
    if w_mat.shape != (f.dim, f.count):
        raise DimensionMismatch(
            f"W has shape {w_mat.shape}, expected {(f.dim, f.count)}"
        )
    v = w_mat @ proj_ker_synthesis(f)
    dual_synth = _solve_frame_op(f, f.synth) + v
    _check_duality(dual_synth, f, tol)
    dual = new_frame(dual_synth, tol)
    return DualFrame(frame=dual, parent=f, v_part=_freeze(v))


def proj_ker_synthesis(f: Frame) -> np.ndarray:
    """The N x N orthogonal projection onto ker(T): I - U S^{-1} T."""
    return np.eye(f.count) - f.analysis_op @ _solve_frame_op(f, f.synth)


def is_riesz_basis(f: Frame, tol: Tol = DEFAULT_TOL) -> bool:
    """True iff the frame has exactly d vectors (then T is invertible)."""
    return f.count == f.dim


def scale_by_symbol(f: Frame, m: Symbol, tol: Tol = DEFAULT_TOL) -> Frame:
    """The weighted sequence (m_n phi_n)_n, so T_{mF} = T_F diag(m).

    Raises NotAFrame when the weights destroy the spanning property, which can
    happen only if m has zero entries.
    """
    if m.count != f.count:
        raise DimensionMismatch(f"symbol length {m.count} != frame count {f.count}")
    return new_frame(f.synth * m.values[np.newaxis, :], tol)


def equivalence_map(f: Frame, g: Frame, tol: Tol = DEFAULT_TOL) -> np.ndarray | None:
    """Invertible V with V phi_n = g_n for all n, or None if no such V exists.

    The candidate is V0 = T_G pinv(T_F); it is accepted iff it maps column to
    column within rel_eq and is invertible per inv_cond.
    """
    if f.dim != g.dim or f.count != g.count:
        raise DimensionMismatch(
            f"cannot compare a {f.dim}x{f.count} frame with a {g.dim}x{g.count} frame"
        )
    v0 = g.synth @ pinv(f.synth, tol)
    residual = op_norm(v0 @ f.synth - g.synth) / max(1.0, op_norm(g.synth))
    if residual > tol.rel_eq:
        return None
    sigma_min, sigma_max = sv_extremes(v0)
    if sigma_max == 0.0 or sigma_min / sigma_max < tol.inv_cond:
        return None
    return v0
