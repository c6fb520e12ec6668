"""Gauss-Jacobi rules on (0, 1) and an independent reference integrator.

Two integration paths live here on purpose. ``gauss_jacobi_rule`` builds
weighted rules from the three-term recurrence via an in-repo implicit-shift
QL eigensolver (Golub-Welsch), while ``reference_integrate`` uses graded
composite Gauss-Legendre panels whose nodes come from Newton iteration on
the Legendre recurrence. The two share no node machinery, so they can
cross-check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .specfun import log_beta

_GRADE_RATIO = 0.25
_QL_MAX_SWEEPS = 50
_EPS = float(np.finfo(float).eps)


class IntegrandEvaluationError(ArithmeticError):
    """An integrand produced a non-finite value at a quadrature node."""

    def __init__(self, node, value):
        super().__init__(f"integrand not finite at node {node!r} (value {value!r})")
        self.node = node
        self.value = value


class ConvergenceError(ArithmeticError):
    """Adaptive integration exhausted its node budget before the tolerance.

    Carries the best estimate and the last observed inter-pass difference
    so callers can decide whether the partial answer is usable.
    """

    def __init__(self, estimate, error_estimate):
        super().__init__(
            f"integral did not converge: estimate {estimate!r}, "
            f"error estimate {error_estimate!r}"
        )
        self.estimate = estimate
        self.error_estimate = error_estimate


@dataclass(frozen=True)
class QuadratureRule:
    """An n-point rule for integrals of u^q (1-u)^p g(u) over (0, 1).

    The weight function is part of the rule: ``sum(weights * g(nodes))``
    approximates the weighted integral of the bare factor g.
    """

    p: float
    q: float
    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 1 or weights.shape != nodes.shape:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")
        if len(nodes) != self.order:
            raise ValueError("order must equal the node count")
        if not (np.all(nodes > 0.0) and np.all(nodes < 1.0)):
            raise ValueError("nodes must lie strictly inside (0, 1)")
        if np.any(np.diff(nodes) <= 0.0):
            raise ValueError("nodes must be strictly increasing")
        if not np.all(weights > 0.0):
            raise ValueError("weights must be strictly positive")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)


def _sample_values(g, pts):
    """Evaluate g on an array of points, tolerating scalar-only callables."""
    vals = None
    try:
        out = g(pts)
        arr = np.asarray(out, dtype=float)
        if arr.shape == pts.shape:
            vals = arr
        elif arr.shape == ():
            vals = np.full(pts.shape, float(arr))
    except (TypeError, ValueError, ZeroDivisionError):
        vals = None
    if vals is None:
        vals = np.array([float(g(float(t))) for t in pts])
    if not np.all(np.isfinite(vals)):
        bad = int(np.argmin(np.isfinite(vals)))
        raise IntegrandEvaluationError(float(pts[bad]), float(vals[bad]))
    return vals


def _jacobi_recurrence(n, p, q):
    """Monic recurrence coefficients for the weight u^q (1-u)^p on (0, 1).

    Returns (diag, offdiag_squared, mass) for the Jacobi matrix; the
    standard (-1, 1) coefficients with exponents (p on 1-x, q on 1+x) are
    mapped by u = (x + 1) / 2, which halves the a's shifted by one and
    quarters the b's.
    """
    A, B = p, q
    ab = A + B
    diag = np.empty(n)
    off2 = np.empty(max(n - 1, 0))
    diag[0] = ((B - A) / (ab + 2.0) + 1.0) / 2.0
    for k in range(1, n):
        t = 2.0 * k + ab
        diag[k] = ((B * B - A * A) / (t * (t + 2.0)) + 1.0) / 2.0
    if n > 1:
        # k = 1 uses the cancelled form: the generic numerator k(k+A+B)
        # is 0/0 against the denominator factor when A + B = -1
        off2[0] = (1.0 + A) * (1.0 + B) / ((2.0 + ab) ** 2 * (3.0 + ab))
    for k in range(2, n):
        t = 2.0 * k + ab
        off2[k - 1] = (
            k * (k + A) * (k + B) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0))
        )
    mass = math.exp(log_beta(q + 1.0, p + 1.0))
    return diag, off2, mass


def _tridiag_eigen_ql(diag, off, vec):
    """Implicit-shift QL sweep for a symmetric tridiagonal matrix.

    diag and off are modified in place; vec is rotated alongside so that
    on return vec[j] holds the first component of the j-th eigenvector
    (the only piece Golub-Welsch weight extraction needs). Classic
    formulation with hypot-based plane rotations.
    """
    n = len(diag)
    e = np.zeros(n)
    e[: n - 1] = off
    for l in range(n):
        sweeps = 0
        while True:
            m = n - 1
            for cand in range(l, n - 1):
                dd = abs(diag[cand]) + abs(diag[cand + 1])
                if abs(e[cand]) + dd == dd:
                    m = cand
                    break
            if m == l:
                break
            sweeps += 1
            if sweeps > _QL_MAX_SWEEPS:
                raise ArithmeticError("tridiagonal QL iteration failed to converge")
            g = (diag[l + 1] - diag[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = diag[m] - diag[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            pshift = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    diag[i + 1] -= pshift
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = diag[i + 1] - pshift
                r = (diag[i] - g) * s + 2.0 * c * b
                pshift = s * r
                diag[i + 1] = g + pshift
                g = c * r - b
                f = vec[i + 1]
                vec[i + 1] = s * vec[i] + c * f
                vec[i] = c * vec[i] - s * f
            if underflow:
                continue
            diag[l] -= pshift
            e[l] = g
            e[m] = 0.0
    return diag, vec


def gauss_jacobi_rule(n, p, q):
    """Build the n-point Gauss rule for the weight u^q (1-u)^p on (0, 1).

    Parameters
    ----------
    n : int
        Node count, n >= 1.
    p, q : float
        Weight exponents, both > -1 so the weighted moments exist.

    Returns
    -------
    QuadratureRule
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise ValueError(f"node count must be an integer, got {n!r}")
    if n < 1:
        raise ValueError(f"node count must be >= 1, got {n}")
    p = float(p)
    q = float(q)
    if not (math.isfinite(p) and math.isfinite(q)):
        raise ValueError("weight exponents must be finite")
    if p <= -1.0 or q <= -1.0:
        raise ValueError(f"weight exponents must exceed -1, got p={p}, q={q}")
    diag, off2, mass = _jacobi_recurrence(int(n), p, q)
    vec = np.zeros(int(n))
    vec[0] = 1.0
    nodes, vec = _tridiag_eigen_ql(diag, np.sqrt(off2), vec)
    order = np.argsort(nodes)
    return QuadratureRule(
        p=p,
        q=q,
        nodes=nodes[order],
        weights=mass * vec[order] ** 2,
        order=int(n),
    )


def integrate_weighted(rule, g):
    """Apply a rule: sum of weights times g at the nodes."""
    vals = _sample_values(g, rule.nodes)
    return float(np.dot(rule.weights, vals))


@lru_cache(maxsize=64)
def _legendre_unit_rule(m):
    """m-point Gauss-Legendre nodes/weights on (0, 1) via Newton iteration.

    Independent of the Jacobi-recurrence path by construction: roots of
    P_m located by Newton's method from the Chebyshev-like initial guesses,
    weights from the derivative formula.
    """
    i = np.arange(1, m + 1)
    x = np.cos(math.pi * (i - 0.25) / (m + 0.5))
    dp = np.ones_like(x)
    for _ in range(100):
        pm1 = np.ones_like(x)
        pm = x.copy()
        for j in range(2, m + 1):
            pm1, pm = pm, ((2.0 * j - 1.0) * x * pm - (j - 1.0) * pm1) / j
        dp = m * (x * pm - pm1) / (x * x - 1.0)
        dx = pm / dp
        x -= dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    nodes = (x[::-1] + 1.0) / 2.0
    weights = w[::-1] / 2.0
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _graded_breakpoints(lo, hi, layers):
    """Panel breakpoints geometrically refined toward both endpoints.

    Points closer to an endpoint than ~1e-13 of the interval scale are
    dropped: below that, node placement degenerates to float spacing and
    the tail extrapolation in reference_integrate takes over anyway.
    """
    mid = 0.5 * (lo + hi)
    half = mid - lo
    floor = 1e-13 * max(1.0, abs(lo), abs(hi))
    pts = [lo]
    for k in range(layers, 0, -1):
        gap = half * _GRADE_RATIO**k
        if gap >= floor:
            pts.append(lo + gap)
    pts.append(mid)
    right = []
    for k in range(layers, 0, -1):
        gap = half * _GRADE_RATIO**k
        if gap >= floor:
            right.append(hi - gap)
    pts.extend(reversed(right))
    pts.append(hi)
    out = [pts[0]]
    for t in pts[1:]:
        if t > out[-1]:
            out.append(t)
    return out


def _extrapolated_tail(inner, t1, t2, t3):
    """Sum the unresolved geometric sliver next to an endpoint.

    With ratio-1/4 grading, panel integrals next to an algebraic
    endpoint singularity decay geometrically; the innermost panel (where
    plain Gauss-Legendre is least accurate) is replaced by the closed
    geometric sum when two consecutive panel ratios agree. Otherwise the
    direct panel value ``inner`` is kept.
    """
    if t2 == 0.0 or t3 == 0.0:
        return inner
    q1 = t1 / t2
    q2 = t2 / t3
    if not (1e-14 < q1 < 0.95 and 1e-14 < q2 < 0.95):
        return inner
    if abs(q1 - q2) > 0.25 * max(q1, q2):
        return inner
    return t1 * q1 / (1.0 - q1)


def _graded_pass(f, lo, hi, layers, m):
    """One composite sweep; returns (integral, sum of |weighted samples|)."""
    ref_nodes, ref_weights = _legendre_unit_rule(m)
    brk = _graded_breakpoints(lo, hi, layers)
    nodes = []
    weights = []
    for a, b in zip(brk[:-1], brk[1:]):
        width = b - a
        nodes.append(a + width * ref_nodes)
        weights.append(width * ref_weights)
    pts = np.concatenate(nodes)
    wts = np.concatenate(weights)
    vals = _sample_values(f, pts)
    contrib = wts * vals
    npanels = len(brk) - 1
    panel_sums = np.add.reduceat(contrib, np.arange(npanels) * m)
    absmass = float(np.sum(np.abs(contrib)))
    total = float(np.sum(panel_sums))
    if npanels >= 4:
        s = panel_sums
        left = _extrapolated_tail(float(s[0]), float(s[1]), float(s[2]), float(s[3]))
        right = _extrapolated_tail(
            float(s[-1]), float(s[-2]), float(s[-3]), float(s[-4])
        )
        total = total - float(s[0]) - float(s[-1]) + left + right
    return total, absmass


_REFERENCE_SCHEDULE = (
    (8, 12),
    (12, 16),
    (16, 20),
    (18, 24),
    (20, 28),
    (20, 32),
    (20, 40),
    (20, 48),
)


def reference_integrate(f, lo, hi, tol):
    """Integrate f over (lo, hi) to an estimated relative error <= tol.

    Composite Gauss-Legendre passes over panels graded toward both
    endpoints (ratio 1/4) with geometric tail extrapolation next to the
    endpoints, escalating panel depth and order until two consecutive
    passes agree. Integrable endpoint singularities are handled by the
    grading; interior kinks are not special-cased and simply fail to
    converge at tight tolerances.
    """
    lo = float(lo)
    hi = float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError(f"need finite lo < hi, got ({lo!r}, {hi!r})")
    tol = float(tol)
    if not (tol > 0.0):
        raise ValueError(f"tolerance must be positive, got {tol!r}")
    prev = None
    last_err = math.inf
    value = math.nan
    for layers, m in _REFERENCE_SCHEDULE:
        value, absmass = _graded_pass(f, lo, hi, layers, m)
        if prev is not None:
            last_err = abs(value - prev)
            # second test: the integral cancels to the rounding floor of
            # the summed mass; no double-precision pass can do better
            if last_err <= tol * abs(value) or last_err <= 100.0 * _EPS * absmass:
                return value
        prev = value
    raise ConvergenceError(value, last_err)
