"""Shared numerical substrate: quadrature, symmetric eigensolver,
pfaffian, special functions and an adaptive ODE integrator.

Infinite intervals are handled by the rational map u = a + t/(1-t)
(resp. u = b - t/(1-t) for left-infinite ones) applied to a rule on
[0, 1); the transform is exposed so other modules can reuse it.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import special as _sp
from scipy.integrate import solve_ivp

from .errors import (
    InvalidArgument,
    IntegrationFailure,
    RangeError,
)

__all__ = [
    "QuadratureRule",
    "OdeGrid",
    "gauss_legendre",
    "sym_eigen",
    "pfaffian",
    "special",
    "ode_integrate",
    "map_halfline",
]


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes/weights approximating integration over ``interval``.

    An n-point rule on a finite interval integrates polynomials up to
    degree 2n-1 exactly.  Infinite endpoints are realized through the
    declared rational transform; exactness then holds for the
    transformed integrand, not for raw polynomials.
    """

    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple = (-1.0, 1.0)

    def integrate(self, f):
        return float(np.dot(self.weights, f(self.nodes)))


@dataclass
class OdeGrid:
    """Accepted abscissae and solution samples of an adaptive solve."""

    abscissae: np.ndarray
    values: np.ndarray
    tolerance: float
    dense: object = field(default=None, repr=False)

    def __call__(self, x):
        return self.dense(x)


def map_halfline(a, t, left=False):
    """Map t in [0,1) to u in (a, inf) via u = a + t/(1-t); returns (u, jacobian).

    With left=True the image is (-inf, a) via u = a - t/(1-t).
    """
    u = t / (1.0 - t)
    jac = 1.0 / (1.0 - t) ** 2
    if left:
        return a - u, jac
    return a + u, jac


def gauss_legendre(n, interval=(-1.0, 1.0)):
    """Gauss-Legendre rule with n points on the given interval.

    Infinite endpoints are allowed; they trigger the rational transform
    above (one side infinite only).
    """
    if n < 1:
        raise InvalidArgument("quadrature order must be >= 1")
    lo, hi = float(interval[0]), float(interval[1])
    if not lo < hi:
        raise InvalidArgument(f"degenerate or reversed interval {interval}")
    x, w = np.polynomial.legendre.leggauss(int(n))
    if np.isfinite(lo) and np.isfinite(hi):
        nodes = 0.5 * (x + 1.0) * (hi - lo) + lo
        weights = 0.5 * (hi - lo) * w
    elif np.isfinite(lo) and not np.isfinite(hi):
        t = 0.5 * (x + 1.0)
        nodes, jac = map_halfline(lo, t)
        weights = 0.5 * w * jac
    elif not np.isfinite(lo) and np.isfinite(hi):
        t = 0.5 * (x + 1.0)
        nodes, jac = map_halfline(hi, t, left=True)
        order = np.argsort(nodes)
        nodes, weights = nodes[order], (0.5 * w * jac)[order]
    else:
        raise InvalidArgument("doubly infinite interval: split at a finite point")
    return QuadratureRule(nodes=nodes, weights=weights, interval=(lo, hi))


def sym_eigen(matrix, tol=1e-12):
    """Eigenvalues (ascending) and orthonormal eigenvectors of a real
    symmetric matrix.  Rejects matrices that are not symmetric within tol."""
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidArgument("sym_eigen expects a square matrix")
    scale = max(1.0, float(np.max(np.abs(a))))
    if np.max(np.abs(a - a.T)) > tol * scale:
        raise InvalidArgument("matrix is not symmetric within tolerance")
    vals, vecs = np.linalg.eigh(a)
    return vals, vecs


def pfaffian(m):
    """Pfaffian of an even-dimensional skew-symmetric matrix.

    Skew-symmetric Householder tridiagonalization with the sign of each
    reflection tracked explicitly; normalization follows the wedge-power
    convention, so pf([[0, a], [-a, 0]]) = a and pfaffian(m)**2 = det(m).
    """
    a = np.array(m, dtype=float, copy=True)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise InvalidArgument("pfaffian expects a square matrix")
    if n % 2 != 0:
        raise InvalidArgument("pfaffian requires even dimension")
    scale = max(1.0, float(np.max(np.abs(a))))
    if np.max(np.abs(a + a.T)) > 1e-12 * scale:
        raise InvalidArgument("matrix is not skew-symmetric")
    if n == 0:
        return 1.0
    pf = 1.0
    for k in range(n - 2):
        col = a[k + 1 :, k]
        alpha = np.linalg.norm(col)
        if alpha == 0.0:
            if k % 2 == 0:
                return 0.0
            continue
        sign0 = 1.0 if col[0] >= 0 else -1.0
        alpha_signed = -sign0 * alpha
        v = col.copy()
        v[0] -= alpha_signed
        v /= np.linalg.norm(v)
        blk = a[k + 1 :, k + 1 :]
        w = blk @ v
        blk += 2.0 * np.outer(v, w) - 2.0 * np.outer(w, v)
        a[k + 1 :, k + 1 :] = blk
        a[k + 1 :, k] = 0.0
        a[k, k + 1 :] = 0.0
        a[k + 1, k] = alpha_signed
        a[k, k + 1] = -alpha_signed
        pf = -pf  # det of a Householder reflection is -1
        if k % 2 == 0:
            pf *= a[k, k + 1]
    pf *= a[n - 2, n - 1]
    return float(pf)


_SPECIAL = ("airy_a", "bessel_j", "bessel_i")


def special(fn, *args):
    """Evaluate a named special function.

    - special("airy_a", x): the second-kind Airy solution scaled so that
      airy_a(u) ~ u**(-1/4) * exp(2/3 u**(3/2)) as u -> +inf (equals
      sqrt(pi) * Bi(u)).  The decaying companion used by the scaling
      kernels is 2*sqrt(pi)*Ai(u); the conversion constant between the
      two amplitude conventions is 2*sqrt(pi).
    - special("bessel_j", nu, x): Bessel function of the first kind.
    - special("bessel_i", k, x): modified Bessel function of the first kind.
    """
    if fn == "airy_a":
        (x,) = args
        if x > 103.0:
            raise RangeError(f"airy_a overflows for x = {x!r} > 103")
        return float(np.sqrt(np.pi) * _sp.airy(x)[2])
    if fn == "bessel_j":
        nu, x = args
        out = _sp.jv(nu, x)
        if not np.isfinite(out):
            raise RangeError(f"bessel_j({nu}, {x}) is out of supported range")
        return float(out)
    if fn == "bessel_i":
        k, x = args
        if abs(x) > 700.0:
            raise RangeError(f"bessel_i overflows for x = {x!r}")
        out = _sp.iv(k, x)
        if not np.isfinite(out):
            raise RangeError(f"bessel_i({k}, {x}) is out of supported range")
        return float(out)
    raise InvalidArgument(f"unknown special function {fn!r}; choose from {_SPECIAL}")


def ode_integrate(rhs, y0, span, tolerance=1e-10, max_step=np.inf, events=None):
    """Adaptive explicit Runge-Kutta 5(4) integration with dense output.

    Local error is kept at or below `tolerance`; dense evaluation between
    accepted steps uses the solver's interpolant.  A stalled step size
    raises IntegrationFailure carrying the last good abscissa.
    """
    y0 = np.atleast_1d(np.asarray(y0, dtype=float))
    if not np.all(np.isfinite(np.atleast_1d(rhs(span[0], y0)))):
        raise InvalidArgument("rhs is not finite at the span start")
    sol = solve_ivp(
        rhs,
        (float(span[0]), float(span[1])),
        y0,
        method="RK45",
        rtol=max(tolerance, 1e-13),
        atol=tolerance * 1e-2,
        dense_output=True,
        max_step=max_step,
        events=events,
    )
    if not sol.success and sol.status != 1:
        raise IntegrationFailure("ODE step size underflow or failure", sol.t[-1])
    order = np.argsort(sol.t)
    return OdeGrid(
        abscissae=sol.t[order],
        values=sol.y[:, order],
        tolerance=tolerance,
        dense=sol.sol,
    )
