"""Polynomials and rational functions with complex floating coefficients.

Everything here is an immutable value: a :class:`RationalFunction` is
reduced (numerator and denominator share no root) and caches its
denominator roots at construction so that pole proximity can be tested
cheaply on every evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, NumericError, PoleError

# relative clustering tolerance for roots (scaled by max root magnitude);
# a double root splits by about sqrt(machine eps) ~ 1.5e-8, so 1e-8 is too tight
CLUSTER_TOL = 1e-7
# |z - pole| < POLE_TOL * (1 + |z|) is treated as evaluation at the pole
POLE_TOL = 1e-12
# relative size below which a coefficient sum counts as exact cancellation
CANCEL_TOL = 64 * np.finfo(float).eps


def _trim(coeffs: Iterable[complex]) -> tuple[complex, ...]:
    c = [complex(x) for x in coeffs]
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    if not c:
        c = [0j]
    return tuple(c)


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with complex coefficients in ascending degree order."""

    coeffs: tuple[complex, ...]

    def __init__(self, coeffs: Iterable[complex]):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @classmethod
    def from_roots(cls, roots: Iterable[complex], lead: complex = 1.0) -> Polynomial:
        c = np.array([complex(lead)])
        for r in roots:
            # multiply by (z - r)
            c = np.concatenate([[0], c]) - r * np.concatenate([c, [0]])
        return cls(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    @property
    def lead(self) -> complex:
        return self.coeffs[-1]

    def __call__(self, z):
        # np.polyval wants descending order
        return np.polyval(self.coeffs[::-1], z)

    def derivative(self) -> Polynomial:
        if self.degree == 0:
            return Polynomial([0])
        return Polynomial([k * c for k, c in enumerate(self.coeffs) if k > 0])

    def scale(self, z) -> np.ndarray:
        """Sum of |c_k| |z|^k, the natural size of rounding errors in p(z)."""
        a = np.abs(np.asarray(self.coeffs))
        return np.polyval(a[::-1], np.abs(z))

    def is_real(self, tol: float = 1e-12) -> bool:
        c = np.asarray(self.coeffs)
        return bool(np.all(np.abs(c.imag) <= tol * max(1.0, np.max(np.abs(c)))))

    def conj(self) -> Polynomial:
        """Coefficient-wise conjugate, i.e. z -> conj(p(conj z))."""
        return Polynomial(np.conj(self.coeffs))

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(n, complex)
        b = np.zeros(n, complex)
        a[: len(self.coeffs)] = self.coeffs
        b[: len(other.coeffs)] = other.coeffs
        s = a + b
        # a sum at roundoff level of its terms is an exact cancellation; keeping
        # it would plant a spurious root near infinity
        s[np.abs(s) <= CANCEL_TOL * (np.abs(a) + np.abs(b))] = 0
        return Polynomial(s)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        return Polynomial(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)})"


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    return Polynomial([x])


@dataclass(frozen=True)
class RootSet:
    """Distinct root locations with multiplicities."""

    roots: tuple[tuple[complex, int], ...]

    def __iter__(self):
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    @property
    def locations(self) -> list[complex]:
        return [r for r, _ in self.roots]

    def expanded(self) -> list[complex]:
        """Each location repeated according to its multiplicity."""
        return [r for r, m in self.roots for _ in range(m)]

    @property
    def total(self) -> int:
        return sum(m for _, m in self.roots)

    def upper(self, tol: float = 0.0) -> RootSet:
        return RootSet(tuple((r, m) for r, m in self.roots if r.imag > tol))

    def lower(self, tol: float = 0.0) -> RootSet:
        return RootSet(tuple((r, m) for r, m in self.roots if r.imag < -tol))

    def real(self, tol: float) -> RootSet:
        return RootSet(tuple((r, m) for r, m in self.roots if abs(r.imag) <= tol))


def _cluster(values: Sequence[complex], tol: float) -> list[tuple[complex, int]]:
    """Single-linkage clustering; each cluster becomes (mean, size)."""
    values = list(values)
    groups: list[list[complex]] = []
    for v in values:
        hits = [g for g in groups if min(abs(v - u) for u in g) <= tol]
        if not hits:
            groups.append([v])
            continue
        merged = [v]
        for g in hits:
            merged.extend(g)
            groups.remove(g)
        groups.append(merged)
    return [(complex(np.mean(g)), len(g)) for g in groups]


def poly_roots(p: Polynomial, tol: float = 1e-8) -> RootSet:
    """Roots of ``p`` with multiplicities.

    Companion-matrix eigenvalues (via :func:`numpy.roots`) followed by one
    Newton step per root, accepted only if it lowers the residual. Roots
    closer than ``CLUSTER_TOL`` times the largest root magnitude are merged
    into a single location whose multiplicity is the cluster size.
    """
    if p.is_zero:
        raise DomainError("poly_roots: the zero polynomial has no finite root set")
    if p.degree == 0:
        return RootSet(())
    try:
        raw = np.roots(np.asarray(p.coeffs)[::-1])
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"poly_roots: eigenvalue iteration failed for {p!r}") from exc
    if len(raw) != p.degree or not np.all(np.isfinite(raw)):
        raise NumericError(f"poly_roots: eigenvalue iteration failed for {p!r}")

    dp = p.derivative()
    polished = []
    for r in raw:
        r = complex(r)
        d = dp(r)
        if d != 0:
            cand = r - p(r) / d
            if abs(p(cand)) < abs(p(r)):
                r = complex(cand)
        polished.append(r)

    span = max(1.0, max(abs(r) for r in polished))
    clusters = _cluster(polished, CLUSTER_TOL * span)
    for r, m in clusters:
        if abs(p(r)) > tol * p.scale(r) and m == 1:
            raise NumericError(
                f"poly_roots: root {r} of {p!r} has residual {abs(p(r)):.3e}",
                error_estimate=float(abs(p(r))),
            )
    clusters.sort(key=lambda rm: (round(rm[0].real, 12), round(rm[0].imag, 12)))
    return RootSet(tuple(clusters))


@dataclass(frozen=True)
class RationalFunction:
    """Reduced quotient ``num/den`` of complex polynomials.

    The denominator is normalized to be monic. ``real_symmetric`` records
    whether all coefficients are real after that normalization, which is
    equivalent to ``f(conj z) == conj f(z)``.
    """

    num: Polynomial
    den: Polynomial
    real_symmetric: bool = field(init=False)
    poles: RootSet = field(init=False, repr=False, compare=False)

    def __init__(self, num, den=(1.0,), reduce: bool = True):
        num = num if isinstance(num, Polynomial) else Polynomial(num)
        den = den if isinstance(den, Polynomial) else Polynomial(den)
        if den.is_zero:
            raise DomainError("RationalFunction: denominator is identically zero")
        if reduce and not num.is_zero and den.degree > 0 and num.degree > 0:
            num, den = _cancel_common_roots(num, den)
        lead = den.lead
        num = Polynomial([c / lead for c in num.coeffs])
        den = Polynomial([c / lead for c in den.coeffs])
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "real_symmetric", num.is_real() and den.is_real())
        poles = poly_roots(den) if den.degree > 0 else RootSet(())
        object.__setattr__(self, "poles", poles)

    @classmethod
    def constant(cls, c: complex) -> RationalFunction:
        return cls([c], [1.0])

    @classmethod
    def identity(cls) -> RationalFunction:
        return cls([0.0, 1.0], [1.0])

    @property
    def degree(self) -> int:
        """McMillan degree: max(deg num, deg den)."""
        return max(self.num.degree if not self.num.is_zero else 0, self.den.degree)

    @property
    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def zeros(self) -> RootSet:
        if self.num.is_zero:
            raise DomainError("zeros: function is identically zero")
        return poly_roots(self.num)

    def _check_poles(self, z) -> None:
        if not len(self.poles):
            return
        z = np.atleast_1d(np.asarray(z, complex))
        locs = np.asarray(self.poles.locations)
        dist = np.abs(z[:, None] - locs[None, :])
        bad = dist < POLE_TOL * (1 + np.abs(z))[:, None]
        if np.any(bad):
            i, j = np.argwhere(bad)[0]
            raise PoleError(f"evaluation at pole {locs[j]} (z = {z[i]})", location=complex(locs[j]))

    def __call__(self, z):
        self._check_poles(z)
        with np.errstate(divide="raise", invalid="raise"):
            try:
                return self.num(z) / self.den(z)
            except FloatingPointError as exc:
                raise PoleError(f"evaluation at a pole (z = {z})") from exc

    def derivative(self) -> RationalFunction:
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d, reduce=False)

    def deriv_at(self, z):
        """Exact quotient-rule derivative at ``z``."""
        self._check_poles(z)
        n, d = self.num, self.den
        dz = d(z)
        return (n.derivative()(z) * dz - n(z) * d.derivative()(z)) / (dz * dz)

    def reflect(self) -> RationalFunction:
        """z -> conj(f(conj z)), which conjugates the coefficients."""
        return RationalFunction(self.num.conj(), self.den.conj(), reduce=False)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> RationalFunction:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other, [1.0], reduce=False)
        return RationalFunction.constant(other)

    def __add__(self, other):
        o = self._coerce(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.num.is_zero:
            raise DomainError("division by the zero function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __repr__(self) -> str:
        return f"RationalFunction(num={list(self.num.coeffs)}, den={list(self.den.coeffs)})"


def _cancel_common_roots(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    zn = poly_roots(num).expanded()
    zd = poly_roots(den).expanded()
    span = max([1.0] + [abs(z) for z in zn + zd])
    tol = 1e-7 * span
    common = False
    for z in list(zn):
        k = min(range(len(zd)), key=lambda j: abs(zd[j] - z), default=None)
        if k is not None and abs(zd[k] - z) <= tol:
            zn.remove(z)
            zd.pop(k)
            common = True
    if not common:
        return num, den
    return Polynomial.from_roots(zn, num.lead), Polynomial.from_roots(zd, den.lead)


def eval_rational(f: RationalFunction, z: complex, order: int = 0) -> complex:
    """Value (``order=0``) or exact derivative (``order=1``) of ``f`` at ``z``."""
    if order == 0:
        return complex(f(z))
    if order == 1:
        return complex(f.deriv_at(z))
    raise DomainError(f"eval_rational: order must be 0 or 1, got {order}")


def check_nsym_symmetry(f: RationalFunction, tol: float = 1e-10, rng=None) -> bool:
    """Decide whether ``f(conj z) == conj f(z)`` identically.

    The coefficient test (real coefficients after dividing by a common
    unimodular factor) decides; eight random non-real probes must agree.
    """
    coeffs = np.concatenate([f.num.coeffs, f.den.coeffs])
    k = int(np.argmax(np.abs(coeffs)))
    phase = coeffs[k] / abs(coeffs[k])
    c = coeffs / phase
    scale = max(1.0, float(np.max(np.abs(c))))
    if np.any(np.abs(c.imag) > tol * scale):
        return False
    rng = np.random.default_rng(12345) if rng is None else rng
    for _ in range(8):
        for _attempt in range(10):
            z = complex(rng.uniform(-3, 3), rng.choice([-1, 1]) * rng.uniform(0.2, 3))
            try:
                a, b = f(np.conj(z)), np.conj(f(z))
            except PoleError:
                continue
            if abs(a - b) > 1e3 * tol * max(1.0, abs(a)):
                return False
            break
    return True
