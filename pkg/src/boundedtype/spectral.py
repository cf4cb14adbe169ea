"""Root counting in C+, negative-index estimation, Stieltjes inversion, real-line scans."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ContourError, DomainError, NumericError, PoleError
from .factorization import HelsonPair
from .funclib import Polynomial, RationalFunction, poly_roots
from .halfplane import HerglotzRepresentation, S0Function
from .kernels import IdentityReport, gram_matrix, nevanlinna

MIN_SEGMENT = 1e-6
INTEGER_TOL = 1e-3


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based (Philox) generator: same seed, same stream on every platform."""
    return np.random.Generator(np.random.Philox(int(seed)))


# ----------------------------------------------------------------------
# Argument principle
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class ContourSpec:
    """Rectangle [real_lo, real_hi] x [imag_lo, imag_hi] in C+.

    ``None`` bounds are filled in from a Cauchy root bound at use time.
    """

    real_lo: float | None = None
    real_hi: float | None = None
    imag_lo: float = 1e-3
    imag_hi: float | None = None
    samples_per_side: int = 64
    max_refinements: int = 40

    def __post_init__(self):
        if not self.imag_lo > 0:
            raise DomainError("contour must stay in the open upper half-plane (imag_lo > 0)")
        if self.samples_per_side < 16:
            raise DomainError("samples_per_side must be at least 16")

    def resolved(self, bound: float) -> ContourSpec:
        R = 1.1 * bound + 1.0
        lo = -R if self.real_lo is None else min(self.real_lo, -R)
        hi = R if self.real_hi is None else max(self.real_hi, R)
        top = R if self.imag_hi is None else max(self.imag_hi, R)
        return ContourSpec(lo, hi, self.imag_lo, top, self.samples_per_side, self.max_refinements)

    def corners(self) -> list[complex]:
        return [
            complex(self.real_lo, self.imag_lo),
            complex(self.real_hi, self.imag_lo),
            complex(self.real_hi, self.imag_hi),
            complex(self.real_lo, self.imag_hi),
        ]


def cauchy_bound(p: Polynomial) -> float:
    """All roots of p satisfy |z| <= 1 + max |c_k / c_n|."""
    c = np.asarray(p.coeffs, complex)
    if p.degree < 1:
        return 0.0
    return 1.0 + float(np.max(np.abs(c[:-1] / c[-1])))


def _track(p: Polynomial, a: complex, b: complex, n: int, max_ref: int) -> float:
    """Continuous change of arg p along the segment [a, b]."""
    ts = np.linspace(0.0, 1.0, n + 1)
    vals = p(a + (b - a) * ts)
    total = 0.0
    stack = [(ts[i], ts[i + 1], vals[i], vals[i + 1], 0) for i in range(n)][::-1]
    length = abs(b - a)
    while stack:
        t0, t1, v0, v1, depth = stack.pop()
        if v0 == 0 or v1 == 0:
            raise ContourError(f"root of f - w on the contour near {a + (b - a) * (t0 if v0 == 0 else t1)}")
        d = float(np.angle(v1 / v0))
        if abs(d) <= np.pi / 2:
            total += d
            continue
        if depth >= max_ref or (t1 - t0) * length < MIN_SEGMENT:
            raise ContourError(
                f"root of f - w within {MIN_SEGMENT:g} of the contour near {a + (b - a) * 0.5 * (t0 + t1)}"
            )
        tm = 0.5 * (t0 + t1)
        vm = p(a + (b - a) * tm)
        stack.append((tm, t1, vm, v1, depth + 1))
        stack.append((t0, tm, v0, vm, depth + 1))
    return total


def count_upper_roots(f: RationalFunction, w: complex, contour: ContourSpec | None = None) -> int:
    """Number of solutions of f(z) = w in C+ (with multiplicity), by the argument principle.

    The argument is tracked for p = num - w den, whose zeros are exactly
    the solutions of f = w (num and den are coprime), so poles of f inside
    the contour do not enter.
    """
    w = complex(w)
    if not w.imag < 0:
        raise DomainError("witness w must lie in the lower half-plane")
    if f.is_constant:
        raise DomainError("count_upper_roots: f is constant")
    p = f.num - f.den * w
    if p.degree < 1:
        return 0
    spec = (contour or ContourSpec()).resolved(cauchy_bound(p))
    # roots closer to R than imag_lo would be silently missed; refuse instead
    for r, _ in poly_roots(p):
        if 0 <= r.imag < spec.imag_lo or abs(r.imag) < MIN_SEGMENT:
            raise ContourError(f"root {r} of f - w lies on or too near the real axis")
    c = spec.corners()
    total = sum(
        _track(p, c[k], c[(k + 1) % 4], spec.samples_per_side, spec.max_refinements) for k in range(4)
    )
    wind = total / (2 * np.pi)
    n = round(wind)
    if abs(wind - n) > INTEGER_TOL:
        raise NumericError(f"winding number {wind:.6f} is not an integer", error_estimate=abs(wind - n))
    return int(n)


# ----------------------------------------------------------------------
# Negative index from Gram inertia
# ----------------------------------------------------------------------
@dataclass
class IndexEstimate:
    kappa: int
    point_counts: list[tuple[int, int]]
    stabilized: bool
    points: np.ndarray = field(default=None, repr=False)


DEFAULT_SCHEDULE = (4, 6, 8, 10, 12)


def sample_upper(n: int, seed: int) -> np.ndarray:
    """Stratified points in C+: log-uniform heights in [0.1, 10], real parts in [-5, 5].

    Each coordinate is a Latin-hypercube draw over n strata; a random order
    is applied so that every prefix is itself spread out.
    """
    rng = make_rng(seed)
    u = (rng.permutation(n) + rng.random(n)) / n
    v = (rng.permutation(n) + rng.random(n)) / n
    pts = (-5.0 + 10.0 * v) + 1j * 10.0 ** (-1.0 + 2.0 * u)
    return pts[rng.permutation(n)]


def estimate_negative_index(f, schedule: Sequence[int] = DEFAULT_SCHEDULE, seed: int = 0) -> IndexEstimate:
    """n- of the Nevanlinna Gram on nested sample sets; kappa is the last count.

    Samples are prefixes of one draw, so by eigenvalue interlacing the
    counts cannot decrease (up to the zero threshold).
    """
    schedule = sorted(int(n) for n in schedule)
    if not schedule or schedule[0] < 1:
        raise DomainError("schedule must contain positive sample sizes")
    if isinstance(f, RationalFunction) and f.is_constant:
        raise DomainError("estimate_negative_index: f is constant")
    pts = sample_upper(schedule[-1], seed)
    G = gram_matrix(nevanlinna(f), pts).matrix
    counts = []
    from .kernels import inertia

    for n in schedule:
        counts.append((n, inertia(G[:n, :n])[1]))
    stab = len(counts) >= 3 and counts[-1][1] == counts[-2][1] == counts[-3][1]
    return IndexEstimate(counts[-1][1], counts, stab, pts)


def verify_index_theorem(
    f: RationalFunction,
    witnesses: Sequence[complex],
    schedule: Sequence[int] = DEFAULT_SCHEDULE,
    contour: ContourSpec | None = None,
    seed: int = 0,
) -> IdentityReport:
    """Root counts of f = w in C+ against the Gram negative index."""
    est = estimate_negative_index(f, schedule, seed)
    counts = {complex(w): count_upper_roots(f, w, contour) for w in witnesses}
    mismatch = max((abs(c - est.kappa) for c in counts.values()), default=0)
    notes = {
        "kappa": est.kappa,
        "point_counts": est.point_counts,
        "stabilized": est.stabilized,
        "root_counts": [[w, c] for w, c in counts.items()],
    }
    status = "" if est.stabilized else "inconclusive"
    return IdentityReport("index theorem", list(counts), float(mismatch), 0.5, status=status, notes=notes)


# ----------------------------------------------------------------------
# Stieltjes inversion
# ----------------------------------------------------------------------
def stieltjes_invert(q, grid: Sequence[float], eps: float) -> np.ndarray:
    """(1/pi) Im q(x + i eps) on the grid."""
    if not eps > 0:
        raise DomainError("eps must be positive")
    x = np.asarray(grid, float)
    if isinstance(q, HerglotzRepresentation):
        for t, _ in q.atoms:
            close = np.abs(x - t) < 10 * eps
            if np.any(close):
                raise DomainError(f"grid point {x[np.argmax(close)]} within 10 eps of the atom at {t}")
    return np.array([complex(q(xx + 1j * eps)).imag / np.pi for xx in x])


# ----------------------------------------------------------------------
# Real-line obstruction scan
# ----------------------------------------------------------------------
@dataclass
class ScanReport:
    interval: tuple[float, float]
    obstructions: list[tuple[str, float]]
    resolution: float

    @property
    def clear(self) -> bool:
        return not self.obstructions


def _real_roots_in(p: Polynomial, a: float, b: float, tol: float) -> list[float]:
    if p.is_zero or p.degree < 1:
        return []
    return sorted(r.real for r, _ in poly_roots(p) if abs(r.imag) <= tol and a < r.real < b)


def real_domain_scan(obj, interval: tuple[float, float], grid_size: int = 2001) -> ScanReport:
    """Obstructions to analytic continuation across (a, b).

    Rational data: real poles. Helson pairs: real zeros of h1 + h2 (and of
    the Blaschke denominators). S0 functions: real poles of the Blaschke
    part and singular atoms. Herglotz representations: atoms and the
    declared density support. Other callables: grid points where evaluation
    fails or blows up. Roots within one grid spacing of R count as real.
    """
    a, b = map(float, interval)
    if not (np.isfinite(a) and np.isfinite(b) and a < b):
        raise DomainError("interval must be finite with a < b")
    res = (b - a) / max(1, grid_size - 1)
    obs: list[tuple[str, float]] = []
    if isinstance(obj, RationalFunction):
        obs += [("pole", x) for x in _real_roots_in(obj.den, a, b, res)]
    elif isinstance(obj, HelsonPair):
        if obj.h1.is_finite_blaschke and obj.h2.is_finite_blaschke:
            s = obj.h1.to_rational() + obj.h2.to_rational()
            obs += [("zero of h1+h2", x) for x in _real_roots_in(s.num, a, b, res)]
        else:
            obs += _grid_scan(lambda z: complex(obj.h1(z)) + complex(obj.h2(z)), a, b, grid_size, zeros=True)
        for h in (obj.h1, obj.h2):
            obs += _s0_obstructions(h, a, b)
    elif isinstance(obj, S0Function):
        obs += _s0_obstructions(obj, a, b)
    elif isinstance(obj, HerglotzRepresentation):
        obs += [("atom", t) for t, _ in obj.atoms if a < t < b]
        if obj.density is not None:
            lo, hi = obj.support if obj.support is not None else (-np.inf, np.inf)
            if lo < b and hi > a:
                obs.append(("density support", max(lo, a)))
    else:
        obs += _grid_scan(obj, a, b, grid_size)
    obs = sorted(set(obs), key=lambda o: (o[1], o[0]))
    return ScanReport((a, b), obs, res)


def _s0_obstructions(h: S0Function, a: float, b: float) -> list[tuple[str, float]]:
    out = [("singular atom", t) for t, _ in h.singular.atoms if a < t < b]
    if not h.outer.is_trivial:
        out.append(("outer factor (continuation not certified)", a))
    return out


def _grid_scan(fn, a, b, n, zeros=False) -> list[tuple[str, float]]:
    out = []
    xs = np.linspace(a, b, n)
    vals = []
    for x in xs:
        try:
            vals.append(complex(fn(x)))
        except (PoleError, ZeroDivisionError, ArithmeticError, DomainError):
            out.append(("evaluation failure", float(x)))
            vals.append(np.nan)
    vals = np.asarray(vals)
    big = np.abs(vals) > 1e8
    out += [("blow-up", float(x)) for x in xs[big]]
    if zeros:
        mags = np.abs(vals)
        for i in range(1, n - 1):
            if mags[i] < 1e-6 and mags[i] <= mags[i - 1] and mags[i] <= mags[i + 1]:
                out.append(("zero of h1+h2", float(xs[i])))
    return out
