"""Acceptance criteria, one test per criterion; each prints a PASS/FAIL line."""

import time

import numpy as np

from boundedtype.factorization import coprime_check, helson_decompose, pair_probe_points, reconstruction_residual
from boundedtype.catalog import FUNCTIONS
from boundedtype.funclib import RationalFunction
from boundedtype.halfplane import BlaschkeProduct, HerglotzRepresentation, OuterFunction, S0Function
from boundedtype.kernels import (
    build_model,
    default_basis,
    dq,
    gram_matrix,
    model_space_rank_test,
    nevanlinna,
    realize_reconstruct,
    resolvent_residual,
    schur_kernel,
    verify_conjugation_identity,
    verify_dw_symbol_identity,
    verify_rank_one_resolvent_difference,
    verify_sum_decomposition,
)
from boundedtype.spectral import count_upper_roots, estimate_negative_index, make_rng, stieltjes_invert
from conftest import record


def _upper(rng, n):
    return rng.uniform(-3, 3, n) + 1j * rng.uniform(0.2, 3, n)


def _mixed(rng, n):
    pts = _upper(rng, n)
    pts[1::2] = np.conj(pts[1::2])
    return pts


def test_ac01_index_equals_root_count():
    t0 = time.perf_counter()
    witnesses = [-1j, -2 - 1j, 5 - 3j, 1 - 0.5j]
    rows = []
    ok = True
    for name in ("z", "-1/z", "z^2", "z^3"):
        f, expected = FUNCTIONS[name]
        est = estimate_negative_index(f, seed=0)
        counts = [count_upper_roots(f, w) for w in witnesses]
        good = est.stabilized and est.kappa == expected and all(c == est.kappa for c in counts)
        ok &= good
        rows.append(f"{name}: kappa={est.kappa} counts={counts}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 30
    record("AC1 index = C+ root count", ok, "; ".join(rows) + f"; {elapsed:.2f}s")
    assert ok


def test_ac02_helson_roundtrip():
    worst, coprime = 0.0, True
    for name, (f, _) in FUNCTIONS.items():
        pair = helson_decompose(f)
        worst = max(worst, reconstruction_residual(pair, f, pair_probe_points(30)))
        coprime &= bool(coprime_check(pair.h1, pair.h2))
    ok = worst < 1e-6 and coprime
    record("AC2 Helson roundtrip", ok, f"max residual {worst:.2e} (< 1e-6), coprime on all {len(FUNCTIONS)}: {coprime}")
    assert ok


def test_ac03_sum_decomposition():
    rng = make_rng(3)
    worst = 0.0
    for name, (f, _) in FUNCTIONS.items():
        pair = helson_decompose(f)
        pts = _mixed(rng, 40)
        rep = verify_sum_decomposition(pair, f, list(zip(pts[:20], pts[20:])), 1e-8)
        worst = max(worst, rep.max_residual)
    ok = worst < 1e-8
    record("AC3 kernel sum decomposition", ok, f"max residual {worst:.2e} (< 1e-8)")
    assert ok


def test_ac04_conjugation_identity():
    rng = make_rng(4)
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(1, 4))
        h = S0Function(np.exp(1j * rng.uniform(0, 2 * np.pi)), BlaschkeProduct(list(_upper(rng, n))))
        pts = _mixed(rng, 40)
        worst = max(worst, verify_conjugation_identity(h, list(zip(pts[:20], pts[20:])), 1e-9).max_residual)
    hand = abs(schur_kernel(S0Function(1.0, BlaschkeProduct([1j])), 2j, 3j) - 1 / 6)
    ok = worst < 1e-9 and hand < 1e-12
    record("AC4 conjugation identity", ok, f"max residual {worst:.2e} (< 1e-9); |s_h(2i,3i) - 1/6| = {hand:.1e}")
    assert ok


def test_ac05_model_relation():
    rng = make_rng(5)
    res_worst, rec_worst = 0.0, 0.0
    for name, (f, _) in FUNCTIONS.items():
        bases = [default_basis(size) for size in (2, 3, 4, 5, 6)]
        bases += [_mixed(rng, int(rng.integers(2, 7))) for _ in range(5)]
        for basis in bases:
            mc = build_model(f, basis)
            for lam in basis:
                for mu in basis:
                    if lam != mu:
                        r = resolvent_residual(mc, lam, mu)["lam-mu"]
                        res_worst = max(res_worst, r["matrix"], r["function"])
        mc = build_model(f, default_basis(4))
        for z in _upper(rng, 20):
            rec_worst = max(rec_worst, abs(realize_reconstruct(mc, mc.basis_points[0], z) - f(z)))
    ok = res_worst < 1e-8 and rec_worst < 1e-9
    record("AC5 resolvent identity / realization", ok,
           f"resolvent residual {res_worst:.2e} (< 1e-8); reconstruction {rec_worst:.2e} (< 1e-9)")
    assert ok


def _separated_zeros(rng, n, min_dist=0.1):
    out = []
    while len(out) < n:
        z = complex(rng.uniform(-2, 2), rng.uniform(0.3, 2.5))
        if all(abs(z - u) >= min_dist for u in out):
            out.append(z)
    return out


def test_ac06_rank_surrogate():
    rng = make_rng(6)
    rows, ok = [], True
    for trial in range(10):
        n1, n2 = int(rng.integers(1, 3)), int(rng.integers(1, 3))
        zs = _separated_zeros(rng, n1 + n2)
        pts = list(_upper(rng, n1 + n2 + 4))
        h1 = S0Function(1.0, BlaschkeProduct(zs[:n1]))
        h2 = S0Function(1.0, BlaschkeProduct(zs[n1:]))
        r, e, good = model_space_rank_test(h1, h2, pts)
        ok &= good and r == e
        # plant a common zero
        h2c = S0Function(1.0, BlaschkeProduct(zs[n1:][:-1] + [zs[0]]))
        rc, ec, goodc = model_space_rank_test(h1, h2c, pts)
        ok &= goodc and rc < ec
        rows.append(f"{r}/{e},{rc}<{ec}")
    record("AC6 rank surrogate", ok, "disjoint/planted per trial: " + " ".join(rows))
    assert ok


def test_ac07_rank_one_resolvent_difference():
    pair = helson_decompose(FUNCTIONS["z^2"][0])
    triples = [(2j, 1j, 5j), (1 + 2j, 0.5 + 1j, -1 + 3j), (-1 + 1.5j, 2j, 1 - 1j),
               (3j, -0.5 + 0.7j, 2 + 2j), (0.3 - 2j, 1 + 1j, -2 + 0.5j)]
    worst = max(verify_rank_one_resolvent_difference(pair, w, [u], [x], 1e-8).max_residual for w, u, x in triples)
    skip = verify_rank_one_resolvent_difference(helson_decompose(FUNCTIONS["z"][0]), 2j, [1j], [5j])
    ok = worst < 1e-8 and skip.status == "skip" and not skip.passed
    record("AC7 rank-one resolvent difference", ok,
           f"z^2 max residual {worst:.2e} (< 1e-8); f = z reported as '{skip.status}'")
    assert ok


def test_ac08_herglotz_gram_positivity():
    rng = make_rng(8)
    worst = np.inf
    for _ in range(10):
        atoms = [(float(rng.uniform(-3, 3)), float(rng.uniform(0.1, 2))) for _ in range(int(rng.integers(0, 4)))]
        kind = int(rng.integers(0, 2))
        c, s = float(rng.uniform(0.1, 1)), float(rng.uniform(0.3, 2))
        if kind == 0:
            q = HerglotzRepresentation(rng.normal(), rng.uniform(0, 2), atoms,
                                       lambda t, c=c, s=s: c * np.exp(-(t / s) ** 2))
        else:
            q = HerglotzRepresentation(rng.normal(), rng.uniform(0, 2), atoms,
                                       lambda t, c=c: np.full(np.shape(t), c), support=(-s, s))
        G = gram_matrix(nevanlinna(q), _upper(rng, 6))
        worst = min(worst, float(G.eigenvalues.min()))
    ok = worst >= -1e-10
    record("AC8 Herglotz Gram positivity", ok, f"min eigenvalue {worst:.2e} (>= -1e-10)")
    assert ok


def test_ac09_stieltjes_box():
    q = HerglotzRepresentation(density=lambda t: np.full(np.shape(t), 0.5), support=(-1.0, 1.0))
    grid = np.linspace(-0.9, 0.9, 37)
    t0 = time.perf_counter()
    vals = stieltjes_invert(q, grid, 1e-4)
    elapsed = time.perf_counter() - t0
    err = float(np.max(np.abs(vals - 0.5)))
    ok = err < 5e-3 and elapsed < 5
    record("AC9 Stieltjes inversion", ok, f"max error {err:.2e} (< 5e-3) in {elapsed:.2f}s (< 5s)")
    assert ok


def test_ac10_outer_quadrature():
    rng = make_rng(10)
    pts = rng.uniform(-3, 3, 10) + 1j * 10 ** rng.uniform(-1, 1, 10)
    F = OuterFunction(lambda t: np.full(np.shape(t), np.log(2.0)))
    e1 = max(abs(F(z) - 2) for z in pts)
    R = OuterFunction(lambda t: np.log(np.abs(t + 1j) / np.abs(t + 2j)))
    e2 = max(abs(abs(R(z)) - abs((z + 1j) / (z + 2j))) for z in pts)
    ok = e1 < 1e-6 and e2 < 1e-6
    record("AC10 outer quadrature", ok, f"constant density error {e1:.2e}; rational modulus error {e2:.2e} (< 1e-6)")
    assert ok


def test_ac11_dw_symbol_identity():
    h = S0Function(1.0, BlaschkeProduct([1j]))
    val = dq(h, 2j)(3j)
    rep = verify_dw_symbol_identity(h, 2j, [3j, 1 + 1j, -1 - 2j, 0.5 + 4j])
    flagged = (not rep.notes["printed form holds"]) and bool(rep.notes["discrepancy"])
    ok = abs(val + 1j / 6) < 1e-12 and rep.passed and flagged
    record("AC11 D_w symbol identity", ok,
           f"D_2i h(3i) = {val:.12g}; corrected residual {rep.max_residual:.1e}; "
           f"printed form residual {rep.notes['printed form -D_w(h) = h(w) s_h(., conj w) residual']:.2f} flagged")
    assert ok
