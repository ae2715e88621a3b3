"""The pencil Delta_q(A), its inverse, S-resolvents, and identity residuals.

For a bounded right-linear operator A on H^n and a quaternion q the
second-order pencil

    delta_op(A, q) = A@A - 2*Re(q)*A + |q|**2 * I

has real coefficients, so it depends on q only through the sphere of q.
When it is invertible, q belongs to the S-resolvent set and the bundle of
associated operators is

    Q       = delta_op(A, q)^(-1)          (pseudo-resolvent),
    S_left  = Q * conj(q) - A @ Q          (left  S-resolvent),
    S_right = (conj(q)*I - A) @ Q          (right S-resolvent).

The residual_* operations evaluate, in the operator norm, the exact
identities these objects satisfy:

  * two-point identity of left S-resolvents:
        S_left(p) - S_left(q)
            = Q(q)*(q - p) + Q(q) @ S_left(p) * triangle(q, p);
  * two-point identity of pseudo-resolvents (both factor orderings; the
    factors commute):
        Q(p) - Q(q) = (Delta_q - Delta_p) @ Q(p) @ Q(q);
  * mixed right/left product identity, valid off the sphere of q:
        S_right(q) @ S_left(p)
            = [ (S_right(q) - S_left(p))*p
                - conj(q)*(S_right(q) - S_left(p)) ] * triangle(q, p)^(-1);
  * the shift pairing A @ S_left(p) = S_left(p)*p - I.

All residuals are returned as absolute operator norms; relative-tolerance
policy belongs to the caller.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import hmat
from .errors import DegenerateConfiguration, NotInResolventSet
from .hmat import QMatrix
from .quatcore import Quaternion, qinv, triangle

# Refusal threshold for resolvent-set membership, relative to the pencil's
# largest singular value; matches the hmat singularity policy.
RESOLVENT_REL_TOL = 1e-10

# Two points count as spectrally degenerate (same sphere) when |triangle|
# falls below this times (1 + |p|**2 + |q|**2).
DEGENERATE_REL_TOL = 1e-12


def delta_op(A: QMatrix, q: Quaternion) -> QMatrix:
    """The pencil A@A - 2*Re(q)*A + |q|**2*I (real coefficients)."""
    return A @ A - (2.0 * q.w) * A + q.abs2() * QMatrix.identity(A.n)


@dataclass(frozen=True)
class ResolventBundle:
    """Everything the package needs at one resolvent-set point."""

    q: Quaternion
    Q: QMatrix
    S_left: QMatrix
    S_right: QMatrix
    norm_Q: float


def resolvent_bundle(A: QMatrix, q: Quaternion) -> ResolventBundle:
    """Invert the pencil at q and assemble both S-resolvents.

    Raises NotInResolventSet (carrying the smallest singular value) when
    the pencil is numerically singular at the package threshold.
    """
    D = delta_op(A, q)
    sv = np.linalg.svd(hmat.chi(D), compute_uv=False)
    if sv[-1] <= RESOLVENT_REL_TOL * sv[0]:
        raise NotInResolventSet(
            f"point {tuple(q)} is numerically in the S-spectrum "
            f"(pencil smallest singular value {sv[-1]:.3e})",
            smallest_singular=float(sv[-1]))
    Q = hmat.qmat_inverse(D)
    qc = q.conj()
    S_left = Q.scale_right(qc) - A @ Q
    S_right = (QMatrix.identity(A.n).scale_left(qc) - A) @ Q
    return ResolventBundle(q=q, Q=Q, S_left=S_left, S_right=S_right,
                           norm_Q=hmat.op_norm(Q))


def residual_resolvent_eq(A: QMatrix, p: Quaternion, q: Quaternion) -> float:
    """Residual norm of the two-point identity of left S-resolvents."""
    bp = resolvent_bundle(A, p)
    bq = resolvent_bundle(A, q)
    lhs = bp.S_left - bq.S_left
    rhs = bq.Q.scale_right(q - p) + (bq.Q @ bp.S_left).scale_right(triangle(q, p))
    return hmat.op_norm(lhs - rhs)


def residual_q_eq(A: QMatrix, p: Quaternion, q: Quaternion):
    """Residual norms of the pseudo-resolvent two-point identity.

    Returns the pair for the factor orderings Q(p)@Q(q) and Q(q)@Q(p);
    both vanish in exact arithmetic because the factors commute.
    """
    bp = resolvent_bundle(A, p)
    bq = resolvent_bundle(A, q)
    lhs = bp.Q - bq.Q
    ddiff = delta_op(A, q) - delta_op(A, p)
    r_pq = hmat.op_norm(lhs - ddiff @ (bp.Q @ bq.Q))
    r_qp = hmat.op_norm(lhs - ddiff @ (bq.Q @ bp.Q))
    return r_pq, r_qp


def residual_mixed_eq(A: QMatrix, p: Quaternion, q: Quaternion) -> float:
    """Residual norm of the mixed right/left S-resolvent product identity.

    Raises DegenerateConfiguration when p lies on the sphere of q, where
    the scalar factor triangle(q, p) is not invertible.
    """
    tri = triangle(q, p)
    if abs(tri) <= DEGENERATE_REL_TOL * (1.0 + p.abs2() + q.abs2()):
        raise DegenerateConfiguration(
            "p lies on the sphere of q: the mixed identity degenerates")
    bp = resolvent_bundle(A, p)
    bq = resolvent_bundle(A, q)
    diff = bq.S_right - bp.S_left
    lhs = bq.S_right @ bp.S_left
    bracket = diff.scale_right(p) - diff.scale_left(q.conj())
    rhs = bracket.scale_right(qinv(tri))
    return hmat.op_norm(lhs - rhs)


def residual_AS_identity(A: QMatrix, p: Quaternion) -> float:
    """Residual norm of A @ S_left(p) - S_left(p)*p + I."""
    b = resolvent_bundle(A, p)
    expr = A @ b.S_left - b.S_left.scale_right(p) + QMatrix.identity(A.n)
    return hmat.op_norm(expr)


def random_resolvent_point(A: QMatrix, rng, box: float | None = None,
                           require_nonreal: bool = False,
                           min_im: float = 0.1,
                           min_sv_rel: float = 1e-6,
                           max_tries: int = 10000) -> Quaternion:
    """Rejection-sample a quaternion at which the pencil is well conditioned.

    Components are uniform on [-box, box] (default box = 2*(1 + ||A||), which
    keeps a healthy fraction of draws outside the spectral spheres); a draw
    is accepted when the pencil's smallest singular value exceeds
    min_sv_rel times its largest.
    """
    if box is None:
        box = 2.0 * (1.0 + hmat.op_norm(A))
    for _ in range(max_tries):
        c = rng.uniform(-box, box, size=4)
        q = Quaternion(float(c[0]), float(c[1]), float(c[2]), float(c[3]))
        if require_nonreal and q.im_norm() < min_im:
            continue
        sv = np.linalg.svd(hmat.chi(delta_op(A, q)), compute_uv=False)
        if sv[-1] > min_sv_rel * sv[0]:
            return q
    raise NotInResolventSet("failed to sample a well-conditioned resolvent point")
