"""Inner-outer splitting and the coprime decomposition f = i(h2 - h1)/(h2 + h1)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, PoleError
from .funclib import CLUSTER_TOL, RationalFunction, check_nsym_symmetry
from .halfplane import (
    BOUND_SLACK,
    BlaschkeProduct,
    OuterFunction,
    S0Function,
    cayley,
    probe_grid,
)
from .quadrature import DEFAULT_QUAD, QuadratureConfig

# real grid (t = tan theta) used to sample boundary log-densities
_THETA = np.linspace(-np.pi / 2, np.pi / 2, 4003)[1:-1]
REAL_GRID = np.tan(_THETA)


@dataclass(frozen=True)
class InnerOuterSplit:
    inner: BlaschkeProduct
    outer_rational: RationalFunction
    front: complex

    def __call__(self, z):
        return self.front * self.inner(z) * self.outer_rational(z)


def inner_outer_split(g: RationalFunction) -> InnerOuterSplit:
    """g = front * B * O with B the Blaschke product over g's C+ zeros.

    ``O`` has no zeros or poles in C+ and is positive at i; the unimodular
    ``front`` absorbs the remaining phase.
    """
    if g.num.is_zero:
        raise DomainError("inner_outer_split: g is identically zero")
    pts = probe_grid()
    try:
        vals = np.abs(g(pts))
    except PoleError as exc:
        raise DomainError("inner_outer_split: g has a pole in C+") from exc
    if np.max(vals) > 1 + BOUND_SLACK:
        raise DomainError(f"inner_outer_split: |g| reaches {np.max(vals):.6g} > 1 on C+")
    if any(p.imag > 0 for p in g.poles.locations):
        raise DomainError("inner_outer_split: g has a pole in C+")

    zeros = g.zeros().upper() if g.num.degree > 0 else g.zeros()
    B = BlaschkeProduct(zeros)
    rest = RationalFunction(g.num * B.rational.den, g.den * B.rational.num)
    z0 = _regular_point([rest])
    c = complex(rest(1j)) if abs(complex(rest(1j))) > 0 else complex(rest(z0))
    front = c / abs(c)
    outer = rest * (1 / front)
    return InnerOuterSplit(B, outer, front)


def _regular_point(funcs, candidates=(1j, 2j, 0.5 + 1.5j, -0.7 + 0.9j, 3j, 1.3 + 0.4j)) -> complex:
    for z in candidates:
        try:
            if all(abs(complex(f(z))) > 1e-8 for f in funcs):
                return z
        except PoleError:
            continue
    raise DomainError("no regular evaluation point found")


@dataclass
class HelsonPair:
    """Coprime h1, h2 in S0 with f = i(h2 - h1)/(h2 + h1)."""

    h1: S0Function
    h2: S0Function
    certificate: float
    f: object = field(default=None, repr=False)

    @property
    def probes(self) -> np.ndarray:
        return pair_probe_points()


def pair_probe_points(n: int = 30) -> np.ndarray:
    """Deterministic probe set: half in C+, half mirrored into C-."""
    k = np.arange(n // 2)
    theta = 0.3 + 2.5 * k / max(1, n // 2 - 1)
    r = 0.6 + 2.0 * ((k * 0.618034) % 1.0)
    upper = r * np.exp(1j * theta)
    upper = upper.real + 1j * np.maximum(upper.imag, 0.15)
    return np.concatenate([upper, np.conj(upper)])


def _log_abs_factored(rf: RationalFunction, x: np.ndarray) -> np.ndarray:
    """log|rf(x)| from the factored form, avoiding cancellation near roots."""
    out = np.full(x.shape, np.log(abs(rf.num.lead)))
    if rf.num.degree > 0:
        for r in rf.zeros().expanded():
            out += np.log(np.abs(x - r))
    for p in rf.poles.expanded():
        out -= np.log(np.abs(x - p))
    return out


def helson_decompose(
    f: RationalFunction,
    quad: QuadratureConfig = DEFAULT_QUAD,
    tol: float = 1e-6,
) -> HelsonPair:
    """Coprime S0 pair (h1, h2) with f = i(h2 - h1)/(h2 + h1).

    With g = (1 + i f)/(1 - i f): h1 carries the Blaschke product over g's
    C+ zeros and the outer part of min(log|g|, 0); h2 carries g's C+ poles
    and the outer part of -max(log|g|, 0). h2 is normalized to front 1 and
    h1's front is whatever makes h1/h2 = g.
    """
    if not isinstance(f, RationalFunction):
        raise DomainError("helson_decompose expects a RationalFunction")
    if f.is_constant:
        raise DomainError("helson_decompose: f is constant")
    if not check_nsym_symmetry(f):
        raise DomainError("helson_decompose: f fails N_sym symmetry")

    g = cayley(f, "forward")
    V1 = BlaschkeProduct(g.zeros().upper() if g.num.degree > 0 else ())
    V2 = BlaschkeProduct(g.poles.upper())
    # remaining factor has no zeros or poles in C+
    outer_rat = RationalFunction(g.num * V2.rational.num * V1.rational.den, g.den * V2.rational.den * V1.rational.num)

    m = _log_abs_factored(outer_rat, REAL_GRID)
    if np.max(np.abs(m)) < 1e-12:
        O1 = O2 = None
    else:
        def m_minus(t, r=outer_rat):
            return np.minimum(_log_abs_factored(r, np.asarray(t, float)), 0.0)

        def m_plus_neg(t, r=outer_rat):
            return -np.maximum(_log_abs_factored(r, np.asarray(t, float)), 0.0)

        O1 = OuterFunction(m_minus, quad=quad, name="min(log|g|, 0)")
        O2 = OuterFunction(m_plus_neg, quad=quad, name="-max(log|g|, 0)")

    h2 = S0Function(1.0, V2, outer=O2, label="h2")
    probe = S0Function(1.0, V1, outer=O1)
    z0 = _regular_point([g, h2, probe])
    front = complex(g(z0)) * complex(h2(z0)) / complex(probe(z0))
    if abs(abs(front) - 1) > 1e-6:
        raise DomainError(f"helson_decompose: non-unimodular front {front} (|.|-1 = {abs(front) - 1:.2e})")
    front /= abs(front)
    h1 = S0Function(front, V1, outer=O1, label="h1")

    pair = HelsonPair(h1, h2, certificate=np.inf, f=f)
    pair.certificate = reconstruction_residual(pair, f)
    if not pair.certificate < tol:
        raise DomainError(f"helson_decompose: reconstruction residual {pair.certificate:.3e} >= {tol}")
    return pair


def reconstruct_from_pair(pair: HelsonPair, z: complex) -> complex:
    """i (h2(z) - h1(z)) / (h2(z) + h1(z))."""
    a, b = complex(pair.h1(z)), complex(pair.h2(z))
    s = a + b
    if abs(s) < 1e-14 * max(1.0, abs(a), abs(b)):
        raise PoleError(f"h1 + h2 vanishes at {z}: a pole of f", location=complex(z))
    return 1j * (b - a) / s


def reconstruction_residual(pair: HelsonPair, f, points=None) -> float:
    points = pair_probe_points() if points is None else points
    worst = 0.0
    for z in points:
        try:
            worst = max(worst, abs(reconstruct_from_pair(pair, z) - complex(f(z))))
        except PoleError:
            continue
    return worst


@dataclass
class CoprimeReport:
    ok: bool
    witnesses: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def coprime_check(h1: S0Function, h2: S0Function, tol: float = 1e-9) -> CoprimeReport:
    """Relative primeness of the inner parts and disjointness of outer supports.

    Checks: disjoint Blaschke zeros, at most one nonzero exp(i alpha z)
    coefficient, disjoint atoms, and no sample point where both outer
    log-densities are below -tol.
    """
    witnesses = []
    z1 = h1.blaschke.zeros.locations
    z2 = h2.blaschke.zeros.locations
    span = max([1.0] + [abs(z) for z in z1 + z2])
    for a in z1:
        for b in z2:
            if abs(a - b) <= CLUSTER_TOL * span:
                witnesses.append(f"common Blaschke zero {a}")
    if h1.singular.alpha > 0 and h2.singular.alpha > 0:
        witnesses.append(f"both exponential factors nonzero: {h1.singular.alpha}, {h2.singular.alpha}")
    t1 = {t for t, _ in h1.singular.atoms}
    for t, _ in h2.singular.atoms:
        if t in t1:
            witnesses.append(f"common singular atom at {t}")
    if not h1.outer.is_trivial and not h2.outer.is_trivial:
        grid = _outer_grid(h1.outer, h2.outer)
        both = (h1.outer.log_density(grid) < -tol) & (h2.outer.log_density(grid) < -tol)
        if np.any(both):
            witnesses.append(f"outer log-densities both negative at t = {grid[np.argmax(both)]:.6g}")
    return CoprimeReport(not witnesses, witnesses)


def _outer_grid(F1: OuterFunction, F2: OuterFunction) -> np.ndarray:
    pieces = [REAL_GRID]
    for F in (F1, F2):
        if F.support is not None:
            pieces.append(np.linspace(*F.support, 2001))
    return np.concatenate(pieces)
