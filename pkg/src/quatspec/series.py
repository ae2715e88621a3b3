"""Spherical series expansion of the left S-resolvent around a center q0.

With B_1 = S_left(q0), B_2 = Q(q0) and the recurrence B_{n+2} = Q(q0) @ B_n
(so B_{2k} = Q^k and B_{2k+1} = Q^k @ S_left(q0)), the left S-resolvent
admits the expansion

    S_left(q) = sum_{n>=0} (-1)**n * B_{n+1} * spherical_power(q0, n, q),

absolutely convergent on the Cassini ball of radius R = ||Q(q0)||**(-1/2)
around q0, and the pseudo-resolvent is its negated spherical derivative:

    Q(q) = sum_{n>=0} (-1)**(n+1) * B_{n+1} * spherical_power_sderiv(q0, n, q).

Truncations come with a posteriori geometric tail bounds driven by
rho = ||Q(q0)|| * |triangle(q0, q)| = (u(q, q0)/R)**2 < 1, and the
truncation error itself has the exact closed form

    S_left(q) - partial_sum(2N+1)
        = Q(q0)^(N+1) @ S_left(q) * triangle(q0, q)**(N+1),

whose norm never exceeds ||S_left(q)|| * rho**(N+1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import hmat
from .errors import InputError, OutsideConvergenceDomain, QuatspecError
from .hmat import QMatrix
from .quatcore import (Quaternion, cassini_u, qmul, qpow, spherical_power,
                       spherical_power_sderiv, triangle)
from .sresolvent import ResolventBundle, resolvent_bundle

# Default cap for adaptive truncation; exceeding it flags non-convergence
# instead of raising, so near-boundary evaluations degrade gracefully.
DEFAULT_NMAX = 200


@dataclass
class SeriesState:
    """Expansion center data: resolvent bundle, radius, coefficient cache."""

    A: QMatrix
    q0: Quaternion
    bundle0: ResolventBundle
    R: float
    norm_S0: float
    coeffs: list = field(default_factory=list)  # coeffs[i] is B_{i+1}

    def coeff(self, n: int) -> QMatrix:
        """B_n (1-indexed), extending the cached recurrence as needed."""
        if n < 1:
            raise InputError("series coefficients are indexed from 1")
        while len(self.coeffs) < n:
            k = len(self.coeffs)
            if k == 0:
                self.coeffs.append(self.bundle0.S_left)
            elif k == 1:
                self.coeffs.append(self.bundle0.Q)
            else:
                self.coeffs.append(self.bundle0.Q @ self.coeffs[k - 2])
        return self.coeffs[n - 1]


def certified_real_point(A: QMatrix) -> Quaternion:
    """The real point 2*(1 + ||A||), always in the resolvent set.

    At a real center r the pencil is (A - r*I)**2, and r exceeds ||A|| by
    at least 2, so the pencil's smallest singular value is at least 4.
    """
    return Quaternion(2.0 * (1.0 + hmat.op_norm(A)))


def series_init(A: QMatrix, q0: Quaternion, N: int) -> SeriesState:
    """Prepare an expansion around q0 with coefficients through B_{N+1}."""
    if N < 0:
        raise InputError("coefficient count must be >= 0")
    bundle0 = resolvent_bundle(A, q0)
    state = SeriesState(A=A, q0=q0, bundle0=bundle0,
                        R=bundle0.norm_Q ** -0.5,
                        norm_S0=hmat.op_norm(bundle0.S_left))
    state.coeff(max(N + 1, 1))
    return state


def _scaled_terms(state: SeriesState, q: Quaternion, nmax: int):
    """Unsigned terms B_{n+1} * spherical_power(q0, n, q) for n = 0..nmax."""
    t = triangle(state.q0, q)
    dq = q - state.q0
    tk = Quaternion(1.0)
    terms = []
    n = 0
    while n <= nmax:
        terms.append(state.coeff(n + 1).scale_right(tk))
        if n + 1 <= nmax:
            terms.append(state.coeff(n + 2).scale_right(qmul(dq, tk)))
        tk = qmul(tk, t)
        n += 2
    return terms


def _partial(state: SeriesState, q: Quaternion, N: int) -> QMatrix:
    """Alternating partial sum through index N (no domain gate)."""
    out = QMatrix.zeros(state.A.n)
    for n, term in enumerate(_scaled_terms(state, q, N)):
        out = out - term if n % 2 else out + term
    return out


def _require_inside(state: SeriesState, q: Quaternion) -> None:
    u = cassini_u(q, state.q0)
    if not u < state.R:
        raise OutsideConvergenceDomain(
            f"u(q, q0) = {u:.6g} is not inside the convergence radius "
            f"R = {state.R:.6g}")


def tail_bound_S(state: SeriesState, q: Quaternion, N: int) -> float:
    """Geometric majorant of the resolvent-series tail beyond index N.

    Even terms satisfy ||B_{2k+1} * p_{2k}|| <= c1 * rho**k and odd terms
    ||B_{2k+2} * p_{2k+1}|| <= c2 * rho**k with c1 = ||S_left(q0)||,
    c2 = ||Q|| * |q - q0| and rho = ||Q|| * |triangle(q0, q)|; summing each
    parity class from its first omitted index gives the bound.
    """
    rho = state.bundle0.norm_Q * abs(triangle(state.q0, q))
    if rho >= 1.0:
        return float("inf")
    c1 = state.norm_S0
    c2 = state.bundle0.norm_Q * abs(q - state.q0)
    ke = N // 2 + 1          # first omitted even term has k = ke
    ko = (N + 1) // 2        # first omitted odd  term has k = ko
    return (c1 * rho ** ke + c2 * rho ** ko) / (1.0 - rho)


def tail_bound_Q(state: SeriesState, q: Quaternion, N: int) -> float:
    """Majorant of the derivative-series tail beyond index N.

    The spherical derivatives grow at most polynomially against the
    geometric decay:  |sderiv p_{2k}| <= 2k*c0*t**(k-1)  and
    |sderiv p_{2k+1}| <= t**k + 2k*c0**2*t**(k-1)  with c0 = |q| + |q0|
    and t = |triangle(q0, q)| (valid on and off the real axis), so the
    tail is a combination of geometric and arithmetico-geometric sums.
    """
    nq = state.bundle0.norm_Q
    rho = nq * abs(triangle(state.q0, q))
    if rho >= 1.0:
        return float("inf")
    c0 = abs(q) + abs(state.q0)
    c1 = state.norm_S0

    def geo(m):  # sum_{k>=m} rho**k
        return rho ** m / (1.0 - rho)

    def arith_geo(m):  # sum_{k>=m} k * rho**(k-1)
        return rho ** (m - 1) * (m - (m - 1) * rho) / (1.0 - rho) ** 2

    ke = N // 2 + 1
    ko = (N + 1) // 2
    return (2.0 * c1 * c0 * nq * arith_geo(ke)
            + nq * geo(ko)
            + 2.0 * c0 * c0 * nq * nq * arith_geo(max(ko, 1)))


def eval_series_S(state: SeriesState, q: Quaternion, N: int):
    """Partial sum of the resolvent series through index N, with tail bound.

    Requires q strictly inside the Cassini ball of convergence; raises
    OutsideConvergenceDomain otherwise.
    """
    if N < 0:
        raise InputError("truncation index must be >= 0")
    _require_inside(state, q)
    return _partial(state, q, N), tail_bound_S(state, q, N)


def eval_series_Q(state: SeriesState, q: Quaternion, N: int):
    """Partial sum of the derivative series through index N, with tail bound."""
    if N < 0:
        raise InputError("truncation index must be >= 0")
    _require_inside(state, q)
    out = QMatrix.zeros(state.A.n)
    for n in range(N + 1):
        term = state.coeff(n + 1).scale_right(
            spherical_power_sderiv(state.q0, n, q))
        out = out + term if n % 2 else out - term
    return out, tail_bound_Q(state, q, N)


def remainder_exact(state: SeriesState, q: Quaternion, N: int) -> float:
    """Norm of the exact truncation error after the partial sum to 2N+1.

    Computes ||Q(q0)^(N+1) @ S_left(q) * triangle(q0, q)**(N+1)|| with the
    directly inverted S_left(q), checks it against the actually summed
    truncation error, and checks the closed-form majorant
    ||S_left(q)|| * (||Q|| * |triangle|)**(N+1); a failure of either
    internal consistency check raises QuatspecError.
    """
    if N < 0:
        raise InputError("truncation index must be >= 0")
    bq = resolvent_bundle(state.A, q)
    tri = triangle(state.q0, q)
    rem_op = (state.coeff(2 * N + 2) @ bq.S_left).scale_right(qpow(tri, N + 1))
    rem = hmat.op_norm(rem_op)

    partial = _partial(state, q, 2 * N + 1)
    direct_err = hmat.op_norm(bq.S_left - partial)
    norm_sq = hmat.op_norm(bq.S_left)
    scale = 1.0 + norm_sq + hmat.op_norm(partial) + rem
    if abs(direct_err - rem) > 1e-10 * scale:
        raise QuatspecError(
            f"closed-form truncation error {rem:.6g} disagrees with the "
            f"summed truncation error {direct_err:.6g}")
    bound = norm_sq * (abs(tri) * state.bundle0.norm_Q) ** (N + 1)
    if rem > bound + 1e-12 * scale:
        raise QuatspecError(
            f"truncation error {rem:.6g} exceeds its majorant {bound:.6g}")
    return rem


def _converge(state, q, rtol, nmax, nth_term, tail):
    """Accumulate terms until tail(N) <= rtol * (1 + ||partial||).

    Returns (partial, tail, N, converged); hitting the cap nmax flags
    non-convergence instead of raising, so near-boundary evaluations
    degrade gracefully.
    """
    _require_inside(state, q)
    partial = QMatrix.zeros(state.A.n)
    t = float("inf")
    for n in range(nmax + 1):
        term = nth_term(state, q, n)
        partial = partial - term if n % 2 else partial + term
        t = tail(state, q, n)
        if t <= rtol * (1.0 + hmat.op_norm(partial)):
            return partial, t, n, True
    return partial, t, nmax, False


def _sterm(state, q, n):
    return state.coeff(n + 1).scale_right(spherical_power(state.q0, n, q))


def _qterm(state, q, n):
    # Note the global sign flip of the derivative series relative to the
    # alternating accumulation in _converge: term 0 enters positively
    # there, so the flip is folded into the term itself.
    return -state.coeff(n + 1).scale_right(
        spherical_power_sderiv(state.q0, n, q))


def converge_series_S(state: SeriesState, q: Quaternion, rtol: float,
                      nmax: int = DEFAULT_NMAX):
    """Smallest-N resolvent-series evaluation at relative tolerance rtol."""
    return _converge(state, q, rtol, nmax, _sterm, tail_bound_S)


def converge_series_Q(state: SeriesState, q: Quaternion, rtol: float,
                      nmax: int = DEFAULT_NMAX):
    """Smallest-N derivative-series evaluation at relative tolerance rtol."""
    return _converge(state, q, rtol, nmax, _qterm, tail_bound_Q)


def term_norms(state: SeriesState, q: Quaternion, N: int):
    """Norms of the unsigned series terms for n = 0..N (decay diagnostics)."""
    return [hmat.op_norm(t) for t in _scaled_terms(state, q, N)]
