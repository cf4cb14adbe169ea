"""Reproducing kernels, Gram inertia, difference-quotient compressions, identity verifiers.

Conventions: the Nevanlinna kernel is
``N_f(z, w) = (f(z) - conj f(w)) / (z - conj w)``, the Schur kernel is
``s_h(z, w) = (1 - h(z) conj h(w)) / (-i (z - conj w))``, and the defect
function at ``w`` is the kernel column ``phi(w) = N_f(., conj w)``, so that
``[g, phi(w)] = g(conj w)`` for every g in the space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import ConditioningError, DomainError, PoleError, RankError
from .factorization import HelsonPair
from .funclib import RationalFunction
from .halfplane import S0Function, cayley, derivative
from .quadrature import DEFAULT_QUAD, QuadratureConfig, integrate_real_line

DIAG_TOL = 1e-8
INERTIA_TOL = 1e-9
SQRT2 = np.sqrt(2.0)


def _val(f, z) -> complex:
    return complex(f(z))


def _near_diagonal(z: complex, w: complex) -> bool:
    return abs(z - np.conj(w)) <= DIAG_TOL * (1 + abs(z))


def nevanlinna_kernel(f, z: complex, w: complex) -> complex:
    """N_f(z, w), with f'(z) on the diagonal z = conj w."""
    z, w = complex(z), complex(w)
    if _near_diagonal(z, w):
        return derivative(f, z)
    return (_val(f, z) - np.conj(_val(f, w))) / (z - np.conj(w))


def schur_kernel(h, z: complex, w: complex) -> complex:
    """s_h(z, w), with -i h'(z)/h(z) on the diagonal z = conj w.

    The diagonal value is the limit of the off-diagonal formula using
    h(z) conj h(conj z) = 1; see :func:`schur_diagonal_printed` for the
    opposite-sign variant.
    """
    z, w = complex(z), complex(w)
    if _near_diagonal(z, w):
        hz = _val(h, z)
        if hz == 0:
            raise PoleError(f"h vanishes at {z}, so h has a pole at {np.conj(z)}", location=np.conj(z))
        return -1j * derivative(h, z) / hz
    return (1 - _val(h, z) * np.conj(_val(h, w))) / (-1j * (z - np.conj(w)))


def schur_diagonal_printed(h, w: complex) -> complex:
    """The diagonal value h'(w) / (-i h(w)), as commonly printed."""
    return derivative(h, w) / (-1j * _val(h, w))


class Kernel:
    """A two-argument kernel with a name; ``kernel(z, w)``."""

    def __init__(self, fn: Callable[[complex, complex], complex], name: str):
        self.fn = fn
        self.name = name

    def __call__(self, z, w):
        return self.fn(z, w)

    def __repr__(self):
        return f"Kernel({self.name})"


def nevanlinna(f) -> Kernel:
    return Kernel(lambda z, w: nevanlinna_kernel(f, z, w), "nevanlinna")


def schur(h) -> Kernel:
    return Kernel(lambda z, w: schur_kernel(h, z, w), "schur")


def bv_kernel(h1, h2) -> Kernel:
    """s_v for v = h1/h2."""
    v = _Quotient(h1, h2)
    return Kernel(lambda z, w: schur_kernel(v, z, w), "s_v")


class _Quotient:
    def __init__(self, a, b):
        self.a, self.b = a, b

    def __call__(self, z):
        bz = _val(self.b, z)
        if abs(bz) < 1e-14:
            raise PoleError(f"h2 vanishes at {z}", location=complex(z))
        return _val(self.a, z) / bz

    def deriv_at(self, z):
        a, b = _val(self.a, z), _val(self.b, z)
        return (derivative(self.a, z) * b - a * derivative(self.b, z)) / (b * b)


# ----------------------------------------------------------------------
# Gram matrices
# ----------------------------------------------------------------------
def inertia(matrix: np.ndarray, rel_tol: float = INERTIA_TOL) -> tuple[int, int, int]:
    """(n+, n-, n0) of a Hermitian matrix; |lambda| < rel_tol * max(1, rho) counts as zero."""
    ev = np.linalg.eigvalsh(matrix)
    thr = rel_tol * max(1.0, float(np.max(np.abs(ev))) if len(ev) else 1.0)
    return int(np.sum(ev > thr)), int(np.sum(ev < -thr)), int(np.sum(np.abs(ev) <= thr))


@dataclass
class KernelGram:
    points: np.ndarray
    matrix: np.ndarray
    inertia: tuple[int, int, int]
    asymmetry: float = 0.0

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def gram_matrix(kernel, points: Sequence[complex]) -> KernelGram:
    """G[j, k] = kernel(z_j, z_k), symmetrized to (G + G*)/2, with inertia."""
    pts = np.asarray(points, dtype=complex)
    if pts.size == 0:
        raise DomainError("gram_matrix needs at least one point")
    if len(set(np.round(pts, 14))) != len(pts):
        raise DomainError("gram_matrix points must be pairwise distinct")
    n = len(pts)
    G = np.empty((n, n), complex)
    for j in range(n):
        for k in range(n):
            try:
                G[j, k] = kernel(pts[j], pts[k])
            except PoleError as exc:
                raise PoleError(f"kernel failed at pair ({pts[j]}, {pts[k]}): {exc}", exc.location) from exc
    asym = float(np.max(np.abs(G - G.conj().T)))
    H = 0.5 * (G + G.conj().T)
    return KernelGram(pts, H, inertia(H), asym)


# ----------------------------------------------------------------------
# Difference quotients
# ----------------------------------------------------------------------
class DQ:
    """D_w g : z -> (g(z) - g(w)) / (z - w), with g'(w) at z = w."""

    def __init__(self, g, w: complex):
        self.g = g
        self.w = complex(w)
        self.gw = _val(g, w)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if z.ndim:
            return np.array([self(zz) for zz in z.ravel()]).reshape(z.shape)
        z = complex(z)
        if abs(z - self.w) <= DIAG_TOL * (1 + abs(z)):
            return derivative(self.g, self.w)
        return (_val(self.g, z) - self.gw) / (z - self.w)


def dq(g, w: complex) -> DQ:
    return DQ(g, w)


class _Product:
    def __init__(self, a, b):
        self.a, self.b = a, b

    def __call__(self, z):
        return _val(self.a, z) * _val(self.b, z)


class KernelColumn:
    """x -> K(x, u) for a fixed second argument."""

    def __init__(self, kernel, u: complex):
        self.kernel = kernel
        self.u = complex(u)

    def __call__(self, x):
        return self.kernel(complex(x), self.u)


# ----------------------------------------------------------------------
# Finite model of the relation A with (A - w)^{-1} = D_w
# ----------------------------------------------------------------------
@dataclass
class ModelCompression:
    """Kernel span {phi(w_j) = N_f(., conj w_j)} with D_w matrices.

    ``gram[j, k] = [phi(w_k), phi(w_j)] = N_f(conj w_j, conj w_k)``. A
    coefficient vector c stands for sum_k c_k phi(w_k).
    """

    f: object
    basis_points: np.ndarray
    gram: KernelGram
    dq_matrices: dict = field(default_factory=dict)
    reference_resolvent: np.ndarray = field(default=None, repr=False)

    def phi(self, w: complex):
        return KernelColumn(nevanlinna(self.f), np.conj(w))

    def synthesize(self, coeffs: np.ndarray, x: complex) -> complex:
        """Value at x of the function with the given coefficients."""
        K = nevanlinna(self.f)
        return complex(sum(c * K(x, np.conj(w)) for c, w in zip(coeffs, self.basis_points)))

    def coefficients(self, values: np.ndarray) -> np.ndarray:
        """Solve G c = b where b_j = g(conj w_j) = [g, phi(w_j)]."""
        G = self.gram.matrix
        b = np.asarray(values, complex)
        if self.gram.inertia[2] == 0:
            return np.linalg.solve(G, b)
        rho = max(1.0, float(np.max(np.abs(self.gram.eigenvalues))))
        c, *_ = np.linalg.lstsq(G, b, rcond=INERTIA_TOL * rho / np.max(np.abs(G)))
        resid = np.max(np.abs(G @ c - b))
        if resid > 1e-8 * max(1.0, float(np.max(np.abs(b)))):
            raise RankError(
                f"singular Gram (n0 = {self.gram.inertia[2]}) and inconsistent system "
                f"(residual {resid:.2e}); choose different basis points"
            )
        return c


def default_basis(n: int, h0: float = 1.0) -> np.ndarray:
    """Two-row grid +-(k+1) i h0 shifted off the imaginary axis."""
    pts = []
    k = 0
    while len(pts) < n:
        pts.append(0.3 * (k + 1) + 1j * (k + 1) * h0)
        if len(pts) < n:
            pts.append(-0.3 * (k + 1) - 1j * (k + 1.5) * h0)
        k += 1
    return np.array(pts)


def build_model(f, basis_points: Sequence[complex]) -> ModelCompression:
    pts = np.asarray(basis_points, complex)
    for a in range(len(pts)):
        for b in range(len(pts)):
            if a != b and abs(pts[a] - pts[b]) < 1e-12:
                raise DomainError("basis points must be pairwise distinct")
            if abs(pts[a] - np.conj(pts[b])) < 1e-12:
                raise DomainError("basis points must not contain a conjugate pair (or real points)")
    gram = gram_matrix(nevanlinna(f), np.conj(pts))
    mc = ModelCompression(f, pts, gram)
    mc.reference_resolvent = _reference_resolvent(mc)
    for w in pts:
        mc.dq_matrices[complex(w)] = _dq_matrix(mc, complex(w))
    return mc


def _reference_resolvent(mc: ModelCompression) -> np.ndarray:
    """D at the first basis point u_0, as a matrix on the kernel span.

    D_w phi(u) = (phi(w) - phi(u)) / (w - u) fixes every column but the
    diagonal one, which is the projected derivative d/du phi(u) at u_0.
    Any choice of that column extends to a pseudo-resolvent with the same
    exact off-diagonal columns at every other basis point. If the extension
    is singular somewhere (redundant span), a Gram null vector, which
    synthesizes to zero, is added to the column.
    """
    pts = mc.basis_points
    n = len(pts)
    f = mc.f
    u0 = pts[0]
    R0 = np.zeros((n, n), complex)
    for j in range(1, n):
        R0[0, j] = 1.0 / (u0 - pts[j])
        R0[j, j] = -1.0 / (u0 - pts[j])
    fw, dfw = _val(f, u0), derivative(f, u0)

    def dphi(x):
        return ((_val(f, x) - fw) / (x - u0) - dfw) / (x - u0)

    c0 = mc.coefficients(np.array([dphi(np.conj(u)) for u in pts]))
    G = mc.gram.matrix
    ev, vecs = np.linalg.eigh(0.5 * (G + G.conj().T))
    rho = max(1.0, float(np.max(np.abs(ev))))
    null = [vecs[:, k] for k in range(n) if abs(ev[k]) < INERTIA_TOL * rho]
    for cand in [c0] + [c0 + v for v in null]:
        R0[:, 0] = cand
        if all(np.linalg.cond(np.eye(n) - (u - u0) * R0) < 1e12 for u in pts[1:]):
            return R0
    raise ConditioningError("compressed resolvent is singular at a basis point for every admissible column")


def _dq_matrix(mc: ModelCompression, w: complex) -> np.ndarray:
    # pseudo-resolvent continuation from u_0; satisfies the resolvent identity exactly
    R0 = mc.reference_resolvent
    n = len(R0)
    A = np.eye(n) - (w - mc.basis_points[0]) * R0
    if np.linalg.cond(A) > 1e12:
        raise ConditioningError(f"compressed resolvent is numerically singular at w = {w}")
    return R0 @ np.linalg.inv(A)


def compress_difference_quotient(mc: ModelCompression, w: complex) -> np.ndarray:
    """Matrix of D_w on the kernel span; ``w`` must be a basis point."""
    w = complex(w)
    for key, M in mc.dq_matrices.items():
        if abs(key - w) < 1e-12:
            return M
    raise DomainError(f"{w} is not a basis point of the compression")


def resolvent_residual(mc: ModelCompression, lam: complex, mu: complex, probes=None) -> dict:
    """Residuals of D_lam - D_mu - c D_lam D_mu for c = lam - mu and c = mu - lam.

    Returns three maxima per sign: raw coefficients, the Gram-weighted
    matrix G R (whose columns are the residual functions evaluated at the
    conjugated basis points, hence independent of the non-unique
    coefficient choice when the Gram is singular), and the residual
    functions synthesized at ``probes``.
    """
    A = compress_difference_quotient(mc, lam)
    B = compress_difference_quotient(mc, mu)
    probes = _default_probes(mc) if probes is None else probes
    out = {}
    for label, c in (("lam-mu", lam - mu), ("mu-lam", mu - lam)):
        R = A - B - c * (A @ B)
        fn = max(abs(mc.synthesize(R[:, j], x)) for j in range(R.shape[1]) for x in probes)
        out[label] = {
            "coefficient": float(np.max(np.abs(R))),
            "matrix": float(np.max(np.abs(mc.gram.matrix @ R))),
            "function": float(fn),
        }
    return out


def _default_probes(mc: ModelCompression) -> list[complex]:
    pts = list(np.conj(mc.basis_points))
    pts += [0.7 + 2.3j, -1.1 + 0.6j, 0.4 - 1.7j, -0.9 - 0.8j]
    return pts


def realize_reconstruct(mc: ModelCompression, z0: complex, z: complex) -> complex:
    """conj f(z0) + (z - conj z0) [phi(z), phi(z0)] with the inner product
    read off the kernel as N_f(conj z0, conj z)."""
    z0 = complex(z0)
    if np.min(np.abs(mc.basis_points - z0)) > 1e-12:
        raise DomainError(f"{z0} is not a basis point")
    f = mc.f
    inner = nevanlinna_kernel(f, np.conj(z0), np.conj(z))
    return np.conj(_val(f, z0)) + (complex(z) - np.conj(z0)) * inner


# ----------------------------------------------------------------------
# Verifiers
# ----------------------------------------------------------------------
@dataclass
class IdentityReport:
    name: str
    probes: list
    max_residual: float
    tolerance: float
    status: str = ""
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.status:
            self.status = "pass" if self.max_residual < self.tolerance else "fail"

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _pairs_residual(lhs, rhs, probes):
    worst = 0.0
    for p in probes:
        worst = max(worst, abs(lhs(*p) - rhs(*p)))
    return worst


def verify_conjugation_identity(h, probes, tol: float = 1e-9) -> IdentityReport:
    """s_h(z, w) = ((1 + h(z))/sqrt2) N_q(z, w) conj((1 + h(w))/sqrt2) with q = C^{-1}(h)."""
    q = cayley(h, "inverse")

    def rhs(z, w):
        return (1 + _val(h, z)) / SQRT2 * nevanlinna_kernel(q, z, w) * np.conj((1 + _val(h, w)) / SQRT2)

    res = _pairs_residual(lambda z, w: schur_kernel(h, z, w), rhs, probes)
    return IdentityReport("conjugation identity", list(probes), res, tol)


def verify_sum_decomposition(pair: HelsonPair, f, probes, tol: float = 1e-8) -> IdentityReport:
    """(sqrt2/(h1+h2)(z)) (s_h1 - s_h2)(z, w) conj(sqrt2/(h1+h2)(w)) = N_f(z, w)."""
    h1, h2 = pair.h1, pair.h2

    def lhs(z, w):
        a = SQRT2 / (_val(h1, z) + _val(h2, z))
        b = np.conj(SQRT2 / (_val(h1, w) + _val(h2, w)))
        return a * (schur_kernel(h1, z, w) - schur_kernel(h2, z, w)) * b

    res = _pairs_residual(lhs, lambda z, w: nevanlinna_kernel(f, z, w), probes)
    return IdentityReport("kernel sum decomposition", list(probes), res, tol)


def verify_dq_identities(g, k, lam: complex, mu: complex, probes, tol: float = 1e-10) -> IdentityReport:
    """Pointwise resolvent and multiplication identities of D_w.

    The resolvent identity is checked as D_lam - D_mu = (lam - mu) D_lam D_mu;
    the residual of the (mu - lam) variant is recorded in ``notes``.
    """
    if lam == mu:
        raise DomainError("verify_dq_identities needs lam != mu")
    Dl, Dm = dq(g, lam), dq(g, mu)
    DlDm = dq(Dm, lam)
    gk = _Product(g, k)
    Dl_gk, Dl_k, Dl_g = dq(gk, lam), dq(k, lam), dq(g, lam)
    g_lam = _val(g, lam)
    res_resolvent = res_printed = res_mult = 0.0
    for x in probes:
        d = Dl(x) - Dm(x)
        dd = DlDm(x)
        res_resolvent = max(res_resolvent, abs(d - (lam - mu) * dd))
        res_printed = max(res_printed, abs(d - (mu - lam) * dd))
        res_mult = max(res_mult, abs(Dl_gk(x) - (g_lam * Dl_k(x) + _val(k, x) * Dl_g(x))))
    res = max(res_resolvent, res_mult)
    return IdentityReport(
        "difference-quotient identities",
        list(probes),
        res,
        tol,
        notes={
            "resolvent (lam-mu) residual": res_resolvent,
            "resolvent (mu-lam) residual": res_printed,
            "multiplication residual": res_mult,
            "printed (mu-lam) form holds": bool(res_printed < tol),
        },
    )


def verify_dw_symbol_identity(h, w: complex, probes, tol: float = 1e-9) -> IdentityReport:
    """D_w(h) = i h(w) s_h(., conj w), also testing -D_w(h) = h(w) s_h(., conj w)."""
    w = complex(w)
    hw = _val(h, w)
    if abs(hw) < 1e-14:
        raise DomainError(f"h vanishes at w = {w}")
    Dh = dq(h, w)
    corrected = printed = 0.0
    for z in probes:
        lhs = Dh(z)
        s = schur_kernel(h, z, np.conj(w))
        corrected = max(corrected, abs(lhs - 1j * hw * s))
        printed = max(printed, abs(-lhs - hw * s))
    return IdentityReport(
        "D_w symbol identity",
        list(probes),
        corrected,
        tol,
        notes={
            "corrected form D_w(h) = i h(w) s_h(., conj w) residual": corrected,
            "printed form -D_w(h) = h(w) s_h(., conj w) residual": printed,
            "printed form holds": bool(printed < tol),
            "discrepancy": "printed form is off by a factor -i" if printed >= tol else "",
        },
    )


def verify_schur_diagonal(h, points, tol: float = 1e-6) -> IdentityReport:
    """Compare the diagonal s_h(w, conj w) with nearby off-diagonal values.

    Reports whether the limit matches -i h'/h (used here) or the printed
    h'/(-i h).
    """
    res_used = res_printed = 0.0
    for w in points:
        w = complex(w)
        # average over four rotated offsets cancels the O(eps) .. O(eps^3) terms
        hc = np.conj(_val(h, np.conj(w)))
        near = 0j
        for d in 1e-3 * min(1.0, abs(w.imag)) * np.array([1, 1j, -1, -1j]):
            near += (1 - _val(h, w + d) * hc) / (-1j * d) / 4
        res_used = max(res_used, abs(near - schur_kernel(h, w, np.conj(w))))
        res_printed = max(res_printed, abs(near - schur_diagonal_printed(h, w)))
    return IdentityReport(
        "Schur kernel diagonal",
        [complex(p) for p in points],
        res_used,
        tol,
        notes={"limit residual": res_used, "printed diagonal residual": res_printed,
               "printed diagonal holds": bool(res_printed < tol)},
    )


def _boundary_pairing_gram(funcs, quad: QuadratureConfig) -> np.ndarray:
    """(1/2pi) integral g_j(x) conj g_k(x) dx for all pairs."""

    def integrand(x):
        V = np.stack([np.array([f(xx) for xx in x]) for f in funcs], axis=1)
        return (V[:, :, None] * np.conj(V[:, None, :])) / (2 * np.pi)

    val, _ = integrate_real_line(integrand, quad)
    # val[j, k] = <g_j, g_k>; Gram convention G[j, k] = <g_k, g_j>
    return np.asarray(val).T


def model_space_rank_test(h1, h2, points, quad: QuadratureConfig = DEFAULT_QUAD, rel_tol: float = INERTIA_TOL):
    """Numerical rank of {s_h1(., z_j)} U {s_h2(., z_j)} in the boundary pairing.

    Returns (rank, expected, pass) with expected = n1 + n2. ``pass`` means
    the rank equals n1 + n2 exactly when the pair is coprime and is smaller
    when a common zero is present.
    """
    from .factorization import coprime_check

    syms = []
    for h in (h1, h2):
        if not isinstance(h, S0Function) or not h.is_finite_blaschke:
            raise DomainError("model_space_rank_test requires finite Blaschke symbols")
        syms.append(h.to_rational())
    n1, n2 = h1.blaschke.degree, h2.blaschke.degree
    pts = [complex(p) for p in points]
    if len(pts) < n1 + n2 + 2:
        raise DomainError("model_space_rank_test needs at least n1 + n2 + 2 points")

    funcs = []
    for r in syms:
        for z in pts:
            rz = np.conj(complex(r(z)))
            funcs.append(lambda x, r=r, z=z, rz=rz: (1 - complex(r(x)) * rz) / (-1j * (x - np.conj(z))))
    G = _boundary_pairing_gram(funcs, quad)
    G = 0.5 * (G + G.conj().T)
    npos, nneg, nzero = inertia(G, rel_tol)
    rank = npos + nneg
    expected = n1 + n2
    coprime = bool(coprime_check(h1, h2))
    ok = rank == expected if coprime else rank < expected
    return rank, expected, ok


def bv_kernel_gram(h1, h2, points) -> KernelGram:
    """Gram of s_v with v = h1/h2; inertia is (n1, n2, rest) for coprime finite Blaschke pairs."""
    return gram_matrix(bv_kernel(h1, h2), points)


def verify_rank_one_resolvent_difference(
    pair: HelsonPair,
    w: complex,
    test_points: Sequence[complex],
    probes: Sequence[complex],
    tol: float = 1e-8,
) -> IdentityReport:
    """Rank-one difference between D_w and the componentwise conjugated D_w.

    For v = k1 N_q1(., u) and v = k2 N_q2(., u) checks
    D_w v = k_i D_w g - [v, phi(conj w)] / (q1(w) + q2(w)) * phi(w)
    with phi(w) = k1 D_w q1 + k2 D_w q2 and [k_i g, phi(conj w)] = +g(w).
    Degenerate pairs (h1 or h2 constant: f or -f Herglotz) are skipped.
    """
    h1, h2 = pair.h1, pair.h2
    w = complex(w)
    name = "rank-one resolvent difference"
    if h1.is_constant or h2.is_constant:
        return IdentityReport(name, [], 0.0, tol, status="skip",
                              notes={"reason": "f or -f is Herglotz: negative or positive component absent"})

    def q1(z):
        hz = _val(h1, z)
        return 1j * (1 - hz) / (1 + hz)

    def q2(z):
        hz = _val(h2, z)
        return -1j * (1 + hz) / (1 - hz)

    def k1(z):
        return (1 + _val(h1, z)) / (_val(h1, z) + _val(h2, z))

    def k2(z):
        return (1 - _val(h2, z)) / (_val(h1, z) + _val(h2, z))

    denom = q1(w) + q2(w)
    if abs(denom) < 1e-10:
        raise ConditioningError(f"q1(w) + q2(w) = {denom:.2e} at w = {w}")
    Dq1, Dq2, Dk1 = dq(q1, w), dq(q2, w), dq(k1, w)

    def phi_w(x):
        return k1(x) * Dq1(x) + k2(x) * Dq2(x)

    worst = worst_alt = consistency = 0.0
    for u in test_points:
        for k, q in ((k1, q1), (k2, q2)):
            g = KernelColumn(nevanlinna(q), u)
            v = _Product(k, g)
            Dv, Dg = dq(v, w), dq(g, w)
            gw = _val(g, w)
            for x in probes:
                base = k(x) * Dg(x)
                lhs = Dv(x)
                worst = max(worst, abs(lhs - (base - gw / denom * phi_w(x))))
                worst_alt = max(worst_alt, abs(lhs - (base + gw / denom * phi_w(x))))
    for x in probes:
        consistency = max(consistency, abs(phi_w(x) + Dk1(x) * denom))
    return IdentityReport(
        name,
        [(w, complex(u), complex(x)) for u in test_points for x in probes],
        max(worst, consistency),
        tol,
        notes={
            "inner product sign": "+g(w)",
            "residual with +g(w)": worst,
            "residual with -g(w)": worst_alt,
            "phi(w) + D_w(k1)(q1(w)+q2(w)) residual": consistency,
            "printed [k1 g, phi(conj w)] = q(w) replaced by g(w)": True,
        },
    )
