"""Evaluators for half-plane function classes.

Every evaluator here is a callable object taking a complex scalar or
array. Objects that know their own derivative expose ``deriv_at(z)``;
for anything else :func:`derivative` falls back to a Cauchy-circle rule.
Values in the lower half-plane always follow the class's own extension
rule, so callers never reflect by hand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, NumericError, PoleError
from .funclib import Polynomial, RationalFunction, RootSet, _cluster, CLUSTER_TOL
from .quadrature import (
    DEFAULT_QUAD,
    QuadratureConfig,
    integrate,
    integrate_real_line,
    singular_breakpoints,
)

# |h| may exceed 1 by this much on the probe grid
BOUND_SLACK = 1e-8
# a "converged" weighted integral beyond this means the tan-mapped integrand
# blew up at an endpoint the nodes never reach
DIVERGENCE_BOUND = 1e12


def probe_grid() -> np.ndarray:
    """200 points in the upper half-plane used to certify |h| <= 1.

    Log-spaced heights 1e-2..1e2 times linear real parts -10..10. A grid
    certificate, not a proof of the supremum bound.
    """
    heights = np.logspace(-2, 2, 10)
    reals = np.linspace(-10, 10, 20)
    return (reals[None, :] + 1j * heights[:, None]).ravel()


def derivative(f, z: complex) -> complex:
    """f'(z): ``f.deriv_at`` when available, else a 32-point Cauchy circle.

    The circle radius is a quarter of the distance to the real axis so the
    rule never crosses it.
    """
    if hasattr(f, "deriv_at"):
        return complex(f.deriv_at(z))
    z = complex(z)
    if z.imag == 0:
        raise DomainError("derivative: generic evaluators need a non-real point")
    r = min(0.25 * abs(z.imag), 0.1 * (1 + abs(z)))
    n = 32
    w = np.exp(2j * np.pi * np.arange(n) / n)
    vals = np.array([complex(f(z + r * wk)) for wk in w])
    return complex(np.mean(vals / w) / r)


def _as_array(z):
    return np.asarray(z, dtype=complex)


# ----------------------------------------------------------------------
# Blaschke products
# ----------------------------------------------------------------------
def blaschke_phase(zeta: complex) -> complex:
    """exp(i alpha) making exp(i alpha)(i - zeta)/(i - conj zeta) >= 0.

    The condition is vacuous for zeta = i; alpha = 0 there.
    """
    u = (1j - zeta) / (1j - np.conj(zeta))
    if abs(u) < 1e-15:
        return 1.0 + 0j
    return complex(np.conj(u) / abs(u))


@dataclass(frozen=True)
class BlaschkeProduct:
    """Finite Blaschke product with canonical phases and a unimodular front."""

    zeros: RootSet = RootSet(())
    unimodular_front: complex = 1.0 + 0j
    rational: RationalFunction = field(init=False, repr=False, compare=False)

    def __init__(self, zeros=(), unimodular_front: complex = 1.0):
        if not isinstance(zeros, RootSet):
            zs = [complex(z) for z in zeros]
            zeros = RootSet(tuple(_cluster(zs, CLUSTER_TOL * max([1.0] + [abs(z) for z in zs]))))
        for z, _ in zeros:
            if not z.imag > 0:
                raise DomainError(f"Blaschke zero {z} is not in the open upper half-plane")
        front = complex(unimodular_front)
        if abs(abs(front) - 1) > 1e-12:
            raise DomainError(f"Blaschke front {front} is not unimodular")
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "unimodular_front", front)
        zs = zeros.expanded()
        lead = front * np.prod([blaschke_phase(z) for z in zs]) if zs else front
        rat = RationalFunction(
            Polynomial.from_roots(zs, lead),
            Polynomial.from_roots(np.conj(zs)),
            reduce=False,
        )
        object.__setattr__(self, "rational", rat)

    @property
    def degree(self) -> int:
        return self.zeros.total

    def __call__(self, z):
        return self.rational(z)

    def deriv_at(self, z):
        return self.rational.deriv_at(z)


def eval_blaschke(B: BlaschkeProduct, z: complex) -> complex:
    return complex(B(z))


# ----------------------------------------------------------------------
# Singular inner factors (atoms and exp(i alpha z) only)
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class SingularInner:
    """exp((i/pi) sum m_j (1/(t_j - z) - t_j/(1+t_j^2))) * exp(i alpha z).

    The same analytic expression is the S0 extension in the lower
    half-plane, so it is used on both sides.
    """

    atoms: tuple[tuple[float, float], ...] = ()
    alpha: float = 0.0

    def __init__(self, atoms=(), alpha: float = 0.0):
        atoms = tuple((float(t), float(m)) for t, m in atoms)
        if any(m <= 0 for _, m in atoms):
            raise DomainError("singular atom masses must be positive")
        if len({t for t, _ in atoms}) != len(atoms):
            raise DomainError("singular atom locations must be distinct")
        if alpha < 0:
            raise DomainError("alpha must be nonnegative")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "alpha", float(alpha))

    @property
    def is_trivial(self) -> bool:
        return not self.atoms and self.alpha == 0

    def _check(self, z):
        for t, _ in self.atoms:
            if np.any(np.abs(z - t) < 1e-12 * (1 + abs(t))):
                raise PoleError(f"singular inner factor evaluated at atom {t}", location=complex(t))

    def log_value(self, z):
        z = _as_array(z)
        self._check(z)
        s = np.zeros_like(z)
        for t, m in self.atoms:
            s = s + m * (1.0 / (t - z) - t / (1 + t * t))
        return 1j / np.pi * s + 1j * self.alpha * z

    def log_deriv(self, z):
        z = _as_array(z)
        self._check(z)
        s = np.zeros_like(z)
        for t, m in self.atoms:
            s = s + m / (t - z) ** 2
        return 1j / np.pi * s + 1j * self.alpha

    def __call__(self, z):
        return np.exp(self.log_value(z))

    def deriv_at(self, z):
        return self(z) * self.log_deriv(z)


def eval_singular(S: SingularInner, z: complex) -> complex:
    return complex(S(z))


# ----------------------------------------------------------------------
# Outer functions
# ----------------------------------------------------------------------
class OuterFunction:
    """exp((-i/pi) * integral (1/(t-z) - t/(1+t^2)) L(t) dt) for boundary data L.

    ``log_density`` must be vectorized. ``support`` restricts the integral
    to a finite interval outside of which L vanishes; ``None`` integrates
    over the whole line. Lower half-plane values use 1/conj(F(conj z)).
    """

    def __init__(
        self,
        log_density: Callable[[np.ndarray], np.ndarray] | None = None,
        support: tuple[float, float] | None = None,
        quad: QuadratureConfig = DEFAULT_QUAD,
        name: str = "",
    ):
        self.log_density = log_density
        self.support = support
        self.quad = quad
        self.name = name
        self.integrability_checked = False
        self.log_norm = 0.0
        if log_density is not None:
            try:
                val, _ = self._integrate(lambda t: np.abs(log_density(t)) / (1 + t * t), None)
            except NumericError as exc:
                raise DomainError("outer log-density is not integrable against dt/(1+t^2)") from exc
            if not np.isfinite(val.real) or abs(val.real) > DIVERGENCE_BOUND:
                raise DomainError("outer log-density is not integrable against dt/(1+t^2)")
            self.log_norm = float(val.real)
            self.integrability_checked = True

    @property
    def is_trivial(self) -> bool:
        return self.log_density is None or self.log_norm == 0.0

    def _integrate(self, g, z):
        brk = singular_breakpoints(z, self.support) if z is not None else []
        if self.support is None:
            return integrate_real_line(g, self.quad, brk)
        lo, hi = self.support
        return integrate(g, lo, hi, self.quad, brk)

    def _log_upper(self, z: complex) -> complex:
        L = self.log_density

        def g(t):
            return (1.0 / (t - z) - t / (1 + t * t)) * L(t)

        val, _ = self._integrate(g, z)
        return -1j / np.pi * val

    def _logderiv_upper(self, z: complex) -> complex:
        L = self.log_density
        val, _ = self._integrate(lambda t: L(t) / (t - z) ** 2, z)
        return -1j / np.pi * val

    def log_value(self, z):
        z = _as_array(z)
        if self.is_trivial:
            return np.zeros_like(z)
        out = np.empty(z.shape, complex)
        for idx, zz in np.ndenumerate(z):
            if zz.imag > 0:
                out[idx] = self._log_upper(zz)
            elif zz.imag < 0:
                # 1/conj(F(conj z)) in log form
                out[idx] = -np.conj(self._log_upper(np.conj(zz)))
            else:
                raise DomainError("outer function evaluated on the real axis")
        return out

    def log_deriv(self, z):
        z = _as_array(z)
        if self.is_trivial:
            return np.zeros_like(z)
        out = np.empty(z.shape, complex)
        for idx, zz in np.ndenumerate(z):
            if zz.imag > 0:
                out[idx] = self._logderiv_upper(zz)
            elif zz.imag < 0:
                # d/dz of -conj(log F(conj z)) is -conj((log F)'(conj z))
                out[idx] = -np.conj(self._logderiv_upper(np.conj(zz)))
            else:
                raise DomainError("outer function evaluated on the real axis")
        return out

    def __call__(self, z):
        return np.exp(self.log_value(z))

    def deriv_at(self, z):
        return self(z) * self.log_deriv(z)

    def __repr__(self) -> str:
        return f"OuterFunction({self.name or 'custom'}, support={self.support})"


def eval_outer(F: OuterFunction, z: complex) -> complex:
    if complex(z).imag <= 0:
        raise DomainError("eval_outer expects a point in the upper half-plane")
    return complex(F(z))


def poisson_log_modulus(F: OuterFunction, z: complex) -> float:
    """(y/pi) * integral L(t) / ((t-x)^2 + y^2) dt, computed directly."""
    x, y = z.real, z.imag
    L = F.log_density
    val, _ = F._integrate(lambda t: y / np.pi * L(t) / ((t - x) ** 2 + y * y) + 0j, z)
    return float(val.real)


# ----------------------------------------------------------------------
# S0 functions in product form
# ----------------------------------------------------------------------
class S0Function:
    """front * Blaschke * singular inner * outer, bounded by 1 on C+.

    Each factor's analytic expression already satisfies
    h(z) * conj(h(conj z)) = 1, so the product is its own S0 extension.
    """

    def __init__(
        self,
        front: complex = 1.0,
        blaschke: BlaschkeProduct | None = None,
        singular: SingularInner | None = None,
        outer: OuterFunction | None = None,
        label: str = "",
    ):
        front = complex(front)
        if abs(abs(front) - 1) > 1e-10:
            raise DomainError(f"S0 front {front} is not unimodular")
        self.front = front
        self.blaschke = blaschke if blaschke is not None else BlaschkeProduct()
        self.singular = singular if singular is not None else SingularInner()
        self.outer = outer if outer is not None else OuterFunction()
        self.label = label
        if not self.outer.is_trivial:
            self._check_outer_bound()

    def _check_outer_bound(self):
        F = self.outer
        if F.support is None:
            t = np.tan(np.linspace(-np.pi / 2, np.pi / 2, 4003)[1:-1])
        else:
            t = np.linspace(*F.support, 4001)
        if np.max(F.log_density(t)) > BOUND_SLACK:
            raise DomainError("S0 outer factor has log-density > 0, so |h| > 1 on C+")

    @property
    def is_constant(self) -> bool:
        return self.blaschke.degree == 0 and self.singular.is_trivial and self.outer.is_trivial

    @property
    def is_finite_blaschke(self) -> bool:
        return self.singular.is_trivial and self.outer.is_trivial

    def __call__(self, z):
        z = _as_array(z)
        val = self.front * self.blaschke(z)
        if not self.singular.is_trivial:
            val = val * self.singular(z)
        if not self.outer.is_trivial:
            val = val * self.outer(z)
        return val

    def deriv_at(self, z):
        z = _as_array(z)
        b, db = self.blaschke(z), self.blaschke.deriv_at(z)
        rest = np.ones_like(z)
        lrest = np.zeros_like(z)
        if not self.singular.is_trivial:
            rest = rest * self.singular(z)
            lrest = lrest + self.singular.log_deriv(z)
        if not self.outer.is_trivial:
            rest = rest * self.outer(z)
            lrest = lrest + self.outer.log_deriv(z)
        return self.front * rest * (db + b * lrest)

    def to_rational(self) -> RationalFunction:
        if not self.is_finite_blaschke:
            raise DomainError("only finite Blaschke symbols are rational")
        B = self.blaschke.rational
        return RationalFunction(B.num * self.front, B.den, reduce=False)

    def __repr__(self) -> str:
        parts = [f"front={self.front:.6g}", f"zeros={self.blaschke.zeros.locations}"]
        if not self.singular.is_trivial:
            parts.append(f"singular={self.singular}")
        if not self.outer.is_trivial:
            parts.append(f"outer={self.outer}")
        return f"S0Function({', '.join(parts)})"


# ----------------------------------------------------------------------
# Herglotz-Nevanlinna integral representations
# ----------------------------------------------------------------------
class HerglotzRepresentation:
    """q(z) = a + b z + sum w_j k(t_j, z) + integral k(t, z) rho(t) dt.

    Here k(t, z) = 1/(t - z) - t/(1 + t^2). ``support`` is a finite interval
    carrying ``density`` or ``None`` for the whole line.
    """

    def __init__(
        self,
        a: float = 0.0,
        b: float = 0.0,
        atoms: Sequence[tuple[float, float]] = (),
        density: Callable[[np.ndarray], np.ndarray] | None = None,
        support: tuple[float, float] | None = None,
        quad: QuadratureConfig = DEFAULT_QUAD,
        name: str = "",
    ):
        if b < 0:
            raise DomainError("Herglotz coefficient b must be nonnegative")
        self.a = float(a)
        self.b = float(b)
        self.atoms = tuple((float(t), float(w)) for t, w in atoms)
        if any(w <= 0 for _, w in self.atoms):
            raise DomainError("Herglotz atom weights must be positive")
        self.density = density
        self.support = support
        self.quad = quad
        self.name = name
        if density is not None:
            try:
                val, _ = self._integrate(lambda t: density(t) / (1 + t * t) + 0j, None)
            except NumericError as exc:
                raise DomainError("density is not integrable against dt/(1+t^2)") from exc
            if not np.isfinite(val.real) or abs(val.real) > DIVERGENCE_BOUND:
                raise DomainError("density is not integrable against dt/(1+t^2)")

    def _integrate(self, g, z):
        brk = singular_breakpoints(z, self.support) if z is not None else []
        if self.support is None:
            return integrate_real_line(g, self.quad, brk)
        lo, hi = self.support
        return integrate(g, lo, hi, self.quad, brk)

    def _eval1(self, z: complex) -> complex:
        if z.imag == 0:
            raise DomainError("Herglotz representation evaluated on the real axis")
        val = self.a + self.b * z
        for t, w in self.atoms:
            val += w * (1.0 / (t - z) - t / (1 + t * t))
        if self.density is not None:
            rho = self.density
            integral, _ = self._integrate(lambda t: (1.0 / (t - z) - t / (1 + t * t)) * rho(t), z)
            val += integral
        return complex(val)

    def _deriv1(self, z: complex) -> complex:
        val = self.b + 0j
        for t, w in self.atoms:
            val += w / (t - z) ** 2
        if self.density is not None:
            rho = self.density
            integral, _ = self._integrate(lambda t: rho(t) / (t - z) ** 2 + 0j, z)
            val += integral
        return complex(val)

    def __call__(self, z):
        z = _as_array(z)
        if z.ndim == 0:
            return self._eval1(complex(z))
        return np.array([self._eval1(complex(zz)) for zz in z.ravel()]).reshape(z.shape)

    def deriv_at(self, z):
        z = _as_array(z)
        if z.ndim == 0:
            return self._deriv1(complex(z))
        return np.array([self._deriv1(complex(zz)) for zz in z.ravel()]).reshape(z.shape)


def eval_herglotz(q: HerglotzRepresentation, z: complex) -> complex:
    return q._eval1(complex(z))


# ----------------------------------------------------------------------
# Cayley transform, Schwartz reflection, S0 extension
# ----------------------------------------------------------------------
class _Mapped:
    """Evaluator built from another evaluator by a pointwise formula."""

    def __init__(self, base, value, deriv, name):
        self.base = base
        self._value = value
        self._deriv = deriv
        self.name = name

    def __call__(self, z):
        return self._value(z)

    def deriv_at(self, z):
        return self._deriv(z)

    def __repr__(self):
        return f"<{self.name} of {self.base!r}>"


def _safe_div(num, den, what):
    den_arr = np.asarray(den)
    if np.any(np.abs(den_arr) < 1e-14 * (1 + np.abs(np.asarray(num)))):
        raise PoleError(f"{what}: denominator vanishes")
    return num / den


def _probe_constant(f, value) -> bool:
    pts = probe_grid()[::7]
    try:
        vals = np.array([complex(f(z)) for z in pts])
    except PoleError:
        return False
    return bool(np.all(np.abs(vals - value) < 1e-12))


def cayley(f, direction: str = "forward"):
    """Cayley transform f -> (1 + i f)/(1 - i f) or its inverse h -> i(1 - h)/(1 + h).

    Rational inputs produce :class:`RationalFunction` outputs.
    """
    if direction == "forward":
        if isinstance(f, RationalFunction):
            if f.is_constant and min(abs(f.num.coeffs[0] - 1j), abs(f.num.coeffs[0] + 1j)) < 1e-14:
                raise DomainError("cayley forward: f is identically +i or -i")
            n, d = f.num, f.den
            return RationalFunction(d + n * 1j, d - n * 1j)
        if _probe_constant(f, 1j) or _probe_constant(f, -1j):
            raise DomainError("cayley forward: f is identically +i or -i")

        def value(z):
            fz = f(z)
            return _safe_div(1 + 1j * fz, 1 - 1j * fz, "cayley forward")

        def deriv(z):
            fz = f(z)
            d = _safe_div(1.0, (1 - 1j * fz) ** 2, "cayley forward")
            return 2j * derivative(f, z) * d

        return _Mapped(f, value, deriv, "cayley")
    if direction == "inverse":
        if isinstance(f, RationalFunction):
            if f.is_constant and abs(f.num.coeffs[0] + 1) < 1e-14:
                raise DomainError("cayley inverse: h is identically -1")
            n, d = f.num, f.den
            return RationalFunction((d - n) * 1j, d + n)
        if _probe_constant(f, -1.0):
            raise DomainError("cayley inverse: h is identically -1")

        def value(z):
            hz = f(z)
            return _safe_div(1j * (1 - hz), 1 + hz, "cayley inverse")

        def deriv(z):
            hz = f(z)
            d = _safe_div(1.0, (1 + hz) ** 2, "cayley inverse")
            return -2j * derivative(f, z) * d

        return _Mapped(f, value, deriv, "inverse cayley")
    raise DomainError(f"cayley: unknown direction {direction!r}")


def schwartz_reflect(f):
    """z -> conj(f(conj z))."""
    if isinstance(f, RationalFunction):
        return f.reflect()
    return _Mapped(
        f,
        lambda z: np.conj(f(np.conj(z))),
        lambda z: np.conj(derivative(f, np.conj(z))),
        "reflection",
    )


def s0_extend(upper, label: str = ""):
    """Extend a function bounded by 1 on C+ to C minus R by h = 1/SR(h) on C-.

    :class:`S0Function` inputs are returned unchanged (they already carry
    the extension). Other inputs are certified on :func:`probe_grid`.
    """
    if isinstance(upper, S0Function):
        return upper
    pts = probe_grid()
    vals = np.array([complex(upper(z)) for z in pts])
    if np.max(np.abs(vals)) > 1 + BOUND_SLACK:
        k = int(np.argmax(np.abs(vals)))
        raise DomainError(f"s0_extend: |h({pts[k]})| = {abs(vals[k]):.6g} > 1")
    if np.all(np.abs(vals) < 1e-300):
        raise DomainError("s0_extend: function vanishes on the probe grid")

    def value1(z):
        z = complex(z)
        if z.imag > 0:
            return complex(upper(z))
        if z.imag < 0:
            u = complex(upper(np.conj(z)))
            if abs(u) < 1e-14:
                raise PoleError(f"S0 extension has a pole at {z}", location=z)
            return 1.0 / np.conj(u)
        raise DomainError("S0 extension evaluated on the real axis")

    def deriv1(z):
        z = complex(z)
        if z.imag > 0:
            return derivative(upper, z)
        u = complex(upper(np.conj(z)))
        if abs(u) < 1e-14:
            raise PoleError(f"S0 extension has a pole at {z}", location=z)
        return -np.conj(derivative(upper, np.conj(z))) / np.conj(u) ** 2

    def vec(fn):
        def wrapped(z):
            z = _as_array(z)
            if z.ndim == 0:
                return fn(z)
            return np.array([fn(zz) for zz in z.ravel()]).reshape(z.shape)

        return wrapped

    return _Mapped(upper, vec(value1), vec(deriv1), label or "S0 extension")
