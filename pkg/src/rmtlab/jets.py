"""Truncated multivariate Taylor ("jet") arithmetic.

A Jet stores the Taylor coefficients of a quantity with respect to a few
named deformation variables, truncated by a weighted total degree.  The
moment matrices of this package have entries whose derivatives are again
moments (index shifts), so seeding jets at the moment level and pushing
them through determinants/pfaffians yields exact structural derivatives
of tau functions: no finite differences in the deformation variables.
"""

import itertools
import math

import numpy as np

__all__ = ["JetSpace", "Jet", "jet_det", "jet_pf"]


class JetSpace:
    """The algebra of truncated polynomials in a fixed set of variables.

    weights: per-variable degree weight (t_k carries weight k so that a
        weighted truncation at 4 keeps exactly the monomials whose
        derivative can shift a moment index by at most 4).
    caps: optional per-variable maximum exponent.
    groups: optional partition of variable indices; monomials mixing two
        groups are dropped (used to keep t- and c-sectors independent,
        which is safe because no requested derivative mixes them).
    """

    def __init__(self, names, weights, wmax, caps=None, groups=None):
        self.names = tuple(names)
        self.weights = tuple(weights)
        self.wmax = int(wmax)
        nv = len(self.names)
        if caps is None:
            caps = tuple(self.wmax // max(w, 1) for w in self.weights)
        self.caps = tuple(caps)
        self.groups = [frozenset(g) for g in groups] if groups else None
        self.nv = nv

        mons = []
        for e in itertools.product(*[range(c + 1) for c in self.caps]):
            if self._wdeg(e) <= self.wmax and self._admissible(e):
                mons.append(e)
        self.mons = sorted(mons)
        self.index = {m: i for i, m in enumerate(self.mons)}
        self.dim = len(self.mons)
        self.zero_e = (0,) * nv
        self._zpos = self.index[self.zero_e]

        ti, tj, tk = [], [], []
        for i, a in enumerate(self.mons):
            for j, b in enumerate(self.mons):
                c = tuple(x + y for x, y in zip(a, b))
                k = self.index.get(c)
                if k is not None:
                    ti.append(i)
                    tj.append(j)
                    tk.append(k)
        self._ti = np.array(ti)
        self._tj = np.array(tj)
        self._tk = np.array(tk)
        self._fact = np.array(
            [math.prod(math.factorial(k) for k in e) for e in self.mons]
        )

    def _wdeg(self, e):
        return sum(w * k for w, k in zip(self.weights, e))

    def _admissible(self, e):
        if self.groups is None:
            return True
        used = sum(1 for g in self.groups if any(e[i] for i in g))
        return used <= 1

    def jet(self, value=0.0, coeffs=None):
        c = np.zeros(self.dim)
        c[self._zpos] = value
        if coeffs:
            for e, v in coeffs.items():
                c[self.index[tuple(e)]] = v
        return Jet(self, c)

    def const(self, value):
        return self.jet(value=value)

    def var(self, name, base=0.0):
        """The jet of the variable itself around the given base value."""
        e = [0] * self.nv
        e[self.names.index(name)] = 1
        return self.jet(value=base, coeffs={tuple(e): 1.0})


class Jet:
    __slots__ = ("space", "c")

    def __init__(self, space, c):
        self.space = space
        self.c = c

    @property
    def value(self):
        return float(self.c[self.space._zpos])

    def __repr__(self):
        terms = {
            self.space.mons[i]: v for i, v in enumerate(self.c) if abs(v) > 0
        }
        return f"Jet({terms})"

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.space, self.c + other.c)
        c = self.c.copy()
        c[self.space._zpos] += other
        return Jet(self.space, c)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.space, -self.c)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.space, self.c * other)
        s = self.space
        out = np.zeros(s.dim)
        np.add.at(out, s._tk, self.c[s._ti] * other.c[s._tj])
        return Jet(s, out)

    __rmul__ = __mul__

    def _nilpotent(self):
        c = self.c.copy()
        c[self.space._zpos] = 0.0
        return Jet(self.space, c)

    def inv(self):
        v = self.value
        if v == 0.0:
            raise ZeroDivisionError("jet with zero value part is not invertible")
        u = self._nilpotent() * (1.0 / v)
        out = self.space.const(1.0)
        term = self.space.const(1.0)
        for _ in range(self.space.wmax):
            term = term * u * (-1.0)
            out = out + term
        return out * (1.0 / v)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.inv()
        return Jet(self.space, self.c / other)

    def __rtruediv__(self, other):
        return self.inv() * other

    def log(self):
        """log |jet|: the sign of the value part is discarded, which leaves
        every derivative of the logarithm unchanged."""
        v = self.value
        if v == 0.0:
            raise ZeroDivisionError("log of a jet with zero value part")
        u = self._nilpotent() * (1.0 / v)
        out = self.space.const(math.log(abs(v)))
        term = self.space.const(1.0)
        sgn = 1.0
        for k in range(1, self.space.wmax + 1):
            term = term * u
            out = out + term * (sgn / k)
            sgn = -sgn
        return out

    def sqrt(self):
        v = self.value
        if v <= 0.0:
            raise ZeroDivisionError("sqrt of a jet with non-positive value part")
        u = self._nilpotent() * (1.0 / v)
        out = self.space.const(1.0)
        term = self.space.const(1.0)
        coef = 1.0
        for k in range(1, self.space.wmax + 1):
            coef *= (0.5 - (k - 1)) / k
            term = term * u
            out = out + term * coef
        return out * math.sqrt(v)

    def deriv(self, spec):
        """Partial-derivative value for an exponent spec.

        spec: either an exponent tuple over all variables, or a dict
        {name: order}.  Returns coeff * prod(order!).
        """
        if isinstance(spec, dict):
            e = [0] * self.space.nv
            for name, order in spec.items():
                e[self.space.names.index(name)] = order
            spec = tuple(e)
        idx = self.space.index.get(tuple(spec))
        if idx is None:
            raise KeyError(f"derivative {spec} outside jet truncation")
        return float(self.c[idx] * self.space._fact[idx])

    def antideriv(self, name):
        """Antiderivative in one variable (coefficient shift), constant 0.

        Only valid when the variable's weight is 1 and the shifted
        monomial stays inside the truncation; used for endpoint jets.
        """
        s = self.space
        iv = s.names.index(name)
        out = np.zeros(s.dim)
        for i, e in enumerate(s.mons):
            if self.c[i] == 0.0:
                continue
            e2 = list(e)
            e2[iv] += 1
            j = s.index.get(tuple(e2))
            if j is not None:
                out[j] = self.c[i] / e2[iv]
        return Jet(s, out)


def jet_det(a):
    """Determinant of a square matrix of jets (Gaussian elimination with
    partial pivoting on the value parts)."""
    n = len(a)
    a = [list(row) for row in a]
    space = a[0][0].space
    det = space.const(1.0)
    sign = 1.0
    for k in range(n):
        piv = max(range(k, n), key=lambda r: abs(a[r][k].value))
        if a[piv][k].value == 0.0:
            return space.const(0.0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        det = det * a[k][k]
        inv = a[k][k].inv()
        for r in range(k + 1, n):
            if not np.any(a[r][k].c):
                continue
            m = a[r][k] * inv
            for c in range(k + 1, n):
                a[r][c] = a[r][c] - m * a[k][c]
    return det * sign


def jet_pf(a):
    """Pfaffian of an even-dimensional skew matrix of jets, by Laplace-type
    expansion along the first row (fine for the small sizes used here)."""
    n = len(a)
    space = a[0][0].space if n else None
    if n == 0:
        raise ValueError("empty matrix")
    if n % 2 != 0:
        raise ValueError("pfaffian requires even dimension")

    def rec(idx):
        if not idx:
            return space.const(1.0)
        i0 = idx[0]
        out = space.const(0.0)
        for pos in range(1, len(idx)):
            j = idx[pos]
            rest = idx[1:pos] + idx[pos + 1 :]
            term = a[i0][j] * rec(rest)
            out = out + term * ((-1.0) ** (pos - 1))
        return out

    return rec(tuple(range(n)))
