"""Command-line front end.

Function specs are JSON objects with a ``kind`` field:

* ``rational``: ``num``, ``den`` coefficient lists (ascending powers);
  entries are numbers or ``[re, im]`` pairs.
* ``blaschke``: ``zeros`` (list of ``[re, im]``), optional ``front``.
* ``herglotz``: ``a``, ``b``, ``atoms`` (list of ``[t, weight]``), optional
  ``density`` object ``{"name": ..., ...params}``.
* ``s0-product``: ``front``, ``zeros``, ``atoms`` (``[t, mass]``), ``alpha``,
  optional ``outer`` density object (boundary log-modulus).

Optional extras: ``label``, ``points`` and ``witnesses`` (lists of
``[re, im]``). Exit codes: 0 pass, 2 invalid input, 3 a check failed,
4 inconclusive, 5 numeric or I/O error.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import re
import sys
import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import __version__
from .catalog import make_density, make_log_density
from .errors import BoundedTypeError, DomainError, NumericError, PoleError
from .factorization import (
    REAL_GRID,
    coprime_check,
    helson_decompose,
    inner_outer_split,
    pair_probe_points,
)
from .funclib import RationalFunction, check_nsym_symmetry
from .halfplane import (
    BOUND_SLACK,
    BlaschkeProduct,
    HerglotzRepresentation,
    OuterFunction,
    S0Function,
    SingularInner,
    cayley,
    probe_grid,
)
from .kernels import (
    IdentityReport,
    build_model,
    default_basis,
    gram_matrix,
    nevanlinna,
    realize_reconstruct,
    resolvent_residual,
    schur,
    verify_conjugation_identity,
    verify_dq_identities,
    verify_dw_symbol_identity,
    verify_rank_one_resolvent_difference,
    verify_schur_diagonal,
    verify_sum_decomposition,
)
from .spectral import (
    DEFAULT_SCHEDULE,
    count_upper_roots,
    make_rng,
    real_domain_scan,
    sample_upper,
    stieltjes_invert,
    verify_index_theorem,
)

EXIT_PASS, EXIT_INPUT, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_NUMERIC = 0, 2, 3, 4, 5
KINDS = ("rational", "blaschke", "herglotz", "s0-product")
DEFAULT_WITNESSES = (-1j, -2 - 1j, 5 - 3j)


class SpecError(DomainError):
    """Invalid function spec or command-line value."""


# ----------------------------------------------------------------------
# Spec parsing
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class FunctionSpec:
    kind: str
    label: str
    payload: dict
    extras: dict = field(default_factory=dict)


def _num(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise SpecError(f"{where}: expected a number, got {json.dumps(x)}")
    return float(x)


def _cnum(x, where: str):
    """Number or [re, im]; normalized to float or [float, float]."""
    if isinstance(x, list):
        if len(x) != 2:
            raise SpecError(f"{where}: complex numbers are [re, im] pairs")
        return [_num(x[0], f"{where}[0]"), _num(x[1], f"{where}[1]")]
    return _num(x, where)


def _to_complex(x) -> complex:
    return complex(x[0], x[1]) if isinstance(x, list) else complex(x)


def _clist(x, where: str, pairs: bool = False) -> list:
    if not isinstance(x, list):
        raise SpecError(f"{where}: expected a list")
    out = [_cnum(v, f"{where}[{i}]") for i, v in enumerate(x)]
    if pairs:
        out = [v if isinstance(v, list) else [v, 0.0] for v in out]
    return out


def _real_pairs(x, where: str) -> list:
    if not isinstance(x, list):
        raise SpecError(f"{where}: expected a list of [t, value] pairs")
    out = []
    for i, v in enumerate(x):
        if not isinstance(v, list) or len(v) != 2:
            raise SpecError(f"{where}[{i}]: expected [t, value]")
        out.append([_num(v[0], f"{where}[{i}][0]"), _num(v[1], f"{where}[{i}][1]")])
    return out


def _density_obj(x, where: str) -> dict:
    if not isinstance(x, dict) or "name" not in x:
        raise SpecError(f"{where}: expected an object with a 'name' field")
    out = {"name": str(x["name"])}
    for k, v in x.items():
        if k == "name":
            continue
        if k in ("num", "den"):
            out[k] = [_num(c, f"{where}.{k}[{i}]") for i, c in enumerate(v)] if isinstance(v, list) else _num(v, f"{where}.{k}")
        else:
            out[k] = _num(v, f"{where}.{k}")
    return out


def _payload(kind: str, d: dict) -> dict:
    p: dict[str, Any] = {}
    if kind == "rational":
        if "num" not in d:
            raise SpecError("spec.num: required for kind 'rational'")
        p["num"] = _clist(d["num"], "spec.num")
        p["den"] = _clist(d.get("den", [1.0]), "spec.den")
        if not p["num"]:
            raise SpecError("spec.num: empty coefficient list")
        if not p["den"] or all(_to_complex(c) == 0 for c in p["den"]):
            raise SpecError("spec.den: denominator is identically zero")
    elif kind == "blaschke":
        p["zeros"] = _clist(d.get("zeros", []), "spec.zeros", pairs=True)
        p["front"] = _cnum(d.get("front", 1.0), "spec.front")
    elif kind == "herglotz":
        p["a"] = _num(d.get("a", 0.0), "spec.a")
        p["b"] = _num(d.get("b", 0.0), "spec.b")
        p["atoms"] = _real_pairs(d.get("atoms", []), "spec.atoms")
        if "density" in d:
            p["density"] = _density_obj(d["density"], "spec.density")
    elif kind == "s0-product":
        p["front"] = _cnum(d.get("front", 1.0), "spec.front")
        p["zeros"] = _clist(d.get("zeros", []), "spec.zeros", pairs=True)
        p["atoms"] = _real_pairs(d.get("atoms", []), "spec.atoms")
        p["alpha"] = _num(d.get("alpha", 0.0), "spec.alpha")
        if "outer" in d:
            p["outer"] = _density_obj(d["outer"], "spec.outer")
    return p


def parse_spec(text: str) -> FunctionSpec:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(d, dict):
        raise SpecError("line 1: spec must be a JSON object")
    kind = d.get("kind")
    if kind not in KINDS:
        raise SpecError(f"spec.kind: expected one of {list(KINDS)}, got {json.dumps(kind)}")
    extras = {}
    for key in ("points", "witnesses"):
        if key in d:
            extras[key] = _clist(d[key], f"spec.{key}", pairs=True)
    known = {"kind", "label", "points", "witnesses", "num", "den", "zeros", "front", "a", "b", "atoms",
             "density", "alpha", "outer"}
    unknown = sorted(set(d) - known)
    if unknown:
        raise SpecError(f"spec.{unknown[0]}: unknown field")
    return FunctionSpec(kind, str(d.get("label", kind)), _payload(kind, d), extras)


def serialize_spec(spec: FunctionSpec) -> str:
    d = {"kind": spec.kind, "label": spec.label, **spec.payload, **spec.extras}
    return dumps(d)


def build_function(spec: FunctionSpec):
    p = spec.payload
    if spec.kind == "rational":
        return RationalFunction([_to_complex(c) for c in p["num"]], [_to_complex(c) for c in p["den"]])
    if spec.kind == "blaschke":
        return S0Function(_to_complex(p["front"]), BlaschkeProduct([_to_complex(z) for z in p["zeros"]]),
                          label=spec.label)
    if spec.kind == "herglotz":
        dens, support = None, None
        if "density" in p:
            params = dict(p["density"])
            dens, support = make_density(params.pop("name"), params)
        return HerglotzRepresentation(p["a"], p["b"], [tuple(t) for t in p["atoms"]], dens, support,
                                      name=spec.label)
    outer = None
    if "outer" in p:
        params = dict(p["outer"])
        name = params.pop("name")
        L, support = make_log_density(name, params)
        outer = OuterFunction(L, support, name=name)
    return S0Function(
        _to_complex(p["front"]),
        BlaschkeProduct([_to_complex(z) for z in p["zeros"]]),
        SingularInner([tuple(t) for t in p["atoms"]], p["alpha"]),
        outer,
        label=spec.label,
    )


def parse_complex(text: str) -> complex:
    """Parse "a+bi", "-1i", "2", "3-0.5i", "-i" (j is accepted for i)."""
    s = text.strip().replace(" ", "").replace("i", "j")
    s = re.sub(r"(^|[+-])j", r"\g<1>1j", s)
    try:
        return complex(s)
    except ValueError:
        raise SpecError(f"--w: cannot parse complex number {text!r} (expected a+bi)") from None


# ----------------------------------------------------------------------
# Deterministic output
# ----------------------------------------------------------------------
def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if x == 0:
        return "0"
    return "%.17g" % x


def _encode(obj, indent: int, level: int, out: list) -> None:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif obj is None:
        out.append("null")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_fmt_float(float(obj)))
    elif isinstance(obj, (complex, np.complexfloating)):
        _encode([obj.real, obj.imag], indent, level, out)
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        keys = sorted(obj, key=str)
        for i, k in enumerate(keys):
            out.append(pad + json.dumps(str(k)) + ": ")
            _encode(obj[k], indent, level + 1, out)
            out.append(",\n" if i < len(keys) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        items = list(obj)
        if not items:
            out.append("[]")
            return
        if all(isinstance(v, (int, float, np.number, bool)) and not isinstance(v, (complex, np.complexfloating))
               for v in items):
            parts = []
            for v in items:
                sub: list = []
                _encode(v, indent, level + 1, sub)
                parts.append("".join(sub))
            out.append("[" + ", ".join(parts) + "]")
            return
        out.append("[\n")
        for i, v in enumerate(items):
            out.append(pad)
            _encode(v, indent, level + 1, out)
            out.append(",\n" if i < len(items) - 1 else "\n")
        out.append(end + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """JSON text with sorted keys and 17-significant-digit floats."""
    out: list = []
    _encode(obj, indent, 0, out)
    return "".join(out) + "\n"


def write_csv(path: str, header: list[str], rows) -> None:
    buf = io.StringIO(newline="")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt_float(float(v)).strip('"') for v in row) + "\n")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(buf.getvalue())


@dataclass
class Check:
    name: str
    residual: float
    tolerance: float
    status: str
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "residual": float(self.residual),
            "tolerance": float(self.tolerance),
            "status": self.status,
            "pass": self.status == "pass",
            "details": _plain(self.details),
        }


def _plain(obj):
    """Convert numpy scalars and nested containers into serializable values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.complexfloating):
        return complex(obj)
    return obj


def _check_from_report(r: IdentityReport) -> Check:
    return Check(r.name, r.max_residual, r.tolerance, r.status, r.notes)


def _simple(name: str, residual: float, tol: float, details=None) -> Check:
    return Check(name, residual, tol, "pass" if residual < tol else "fail", details or {})


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------
def _need_kind(spec: FunctionSpec, *kinds: str) -> None:
    if spec.kind not in kinds:
        raise SpecError(f"spec.kind: this command needs kind {' or '.join(kinds)}, got {spec.kind!r}")


def _nsym(spec: FunctionSpec, f: RationalFunction) -> None:
    if not check_nsym_symmetry(f):
        raise SpecError(f"spec ({spec.label}): f fails N_sym symmetry (f(conj z) != conj f(z))")


def _spec_points(spec: FunctionSpec, key: str):
    return [_to_complex(p) for p in spec.extras.get(key, [])]


def _roots_list(bp: BlaschkeProduct) -> list:
    return [complex(z) for z in bp.zeros.expanded()]


def cmd_factor(spec, fn, args) -> tuple[dict, list[Check], dict]:
    checks: list[Check] = []
    res: dict = {}
    if spec.kind == "rational":
        _nsym(spec, fn)
        if fn.is_constant:
            raise SpecError(f"spec ({spec.label}): f is constant")
        g = cayley(fn, "forward")
        upper_zeros = g.zeros().upper() if g.num.degree > 0 else ()
        V1 = BlaschkeProduct(upper_zeros)
        V2 = BlaschkeProduct(g.poles.upper())
        rest = RationalFunction(g.num * V2.rational.num * V1.rational.den,
                                g.den * V2.rational.den * V1.rational.num)
        pts = pair_probe_points()
        recon = max(abs(complex(V1(z)) * complex(rest(z)) / complex(V2(z)) - complex(g(z))) for z in pts[:15])
        m = np.log(np.abs(rest(REAL_GRID)))
        res.update({
            "cayley_num": list(g.num.coeffs), "cayley_den": list(g.den.coeffs),
            "inner_zeros": _roots_list(V1), "inner_poles": _roots_list(V2),
            "outer_log_modulus_range": [float(m.min()), float(m.max())],
        })
        checks.append(_simple("g = V1 * G / V2 reconstruction", recon, max(args.tol, 1e-8)))
        bounded = float(np.max(np.abs(g(probe_grid())))) <= 1 + BOUND_SLACK and not V2.degree
        if bounded:
            split = inner_outer_split(g)
            r2 = max(abs(complex(split(z)) - complex(g(z))) for z in pts[:15])
            res["inner_outer_split"] = {"front": split.front, "inner_zeros": _roots_list(split.inner)}
            checks.append(_simple("inner-outer split reconstruction", r2, max(args.tol, 1e-8)))
    elif spec.kind in ("blaschke", "s0-product"):
        pts = pair_probe_points()[:15]
        sym = max(abs(complex(fn(np.conj(z))) * np.conj(complex(fn(z))) - 1) for z in pts)
        bound = float(np.max(np.abs(fn(probe_grid()))))
        res.update({"front": fn.front, "zeros": _roots_list(fn.blaschke),
                    "singular_atoms": [list(a) for a in fn.singular.atoms], "alpha": fn.singular.alpha,
                    "outer_trivial": fn.outer.is_trivial, "sup_on_probe_grid": bound})
        tol = max(args.tol, 1e-9 if fn.outer.is_trivial else 1e-8)
        checks.append(_simple("S0 symmetry h(conj z) conj h(z) = 1", sym, tol))
        checks.append(_simple("bound |h| <= 1 on probe grid", max(0.0, bound - 1), BOUND_SLACK + 1e-15))
    else:
        pts = pair_probe_points()[:15]
        vals = fn(pts)
        res.update({"a": fn.a, "b": fn.b, "atoms": [list(a) for a in fn.atoms]})
        checks.append(_simple("Im q >= 0 on C+", max(0.0, -float(np.min(vals.imag))), 1e-9))
        sym = max(abs(complex(fn(np.conj(z))) - np.conj(complex(fn(z)))) for z in pts)
        checks.append(_simple("symmetry q(conj z) = conj q(z)", sym, max(args.tol, 1e-8)))
    return res, checks, {}


def cmd_helson(spec, fn, args):
    _need_kind(spec, "rational")
    _nsym(spec, fn)
    pair = helson_decompose(fn)
    g = cayley(fn, "forward")
    pts = pair_probe_points()
    ratio = 0.0
    for z in pts:
        try:
            ratio = max(ratio, abs(complex(pair.h1(z)) / complex(pair.h2(z)) - complex(g(z))))
        except (PoleError, ZeroDivisionError):
            continue
    cp = coprime_check(pair.h1, pair.h2)
    res = {
        "h1": {"front": pair.h1.front, "zeros": _roots_list(pair.h1.blaschke),
               "outer_trivial": pair.h1.outer.is_trivial},
        "h2": {"front": pair.h2.front, "zeros": _roots_list(pair.h2.blaschke),
               "outer_trivial": pair.h2.outer.is_trivial},
        "certificate": pair.certificate,
    }
    checks = [
        _simple("reconstruction f = i(h2-h1)/(h2+h1)", pair.certificate, 1e-6),
        Check("coprime", 0.0, 0.0, "pass" if cp else "fail", {"witnesses": cp.witnesses}),
        _simple("h1/h2 = cayley(f)", ratio, 1e-6),
    ]
    return res, checks, {}


def _gram_points(spec, args) -> list[complex]:
    pts = _spec_points(spec, "points")
    if pts:
        return pts
    return list(sample_upper(args.points or 6, args.seed))


def cmd_gram(spec, fn, args):
    pts = _gram_points(spec, args)
    if spec.kind == "rational":
        _nsym(spec, fn)
        kern = nevanlinna(fn)
    elif spec.kind == "herglotz":
        kern = nevanlinna(fn)
    else:
        kern = schur(fn)
    G = gram_matrix(kern, pts)
    ev = G.eigenvalues
    res = {"points": pts, "inertia": list(G.inertia), "eigenvalues": list(ev),
           "matrix": [[complex(v) for v in row] for row in G.matrix]}
    checks = [_simple("hermitian before symmetrization", G.asymmetry,
                      1e-10 * max(1.0, float(np.max(np.abs(G.matrix)))))]
    if spec.kind in ("herglotz", "blaschke", "s0-product"):
        checks.append(_simple("positive semidefinite", max(0.0, -float(ev.min())), 1e-10 * max(1.0, float(np.abs(ev).max()))))
    table = {"header": ["re", "im"], "rows": [(v.real, v.imag) for v in G.matrix.ravel()]}
    return res, checks, table


def _witnesses(spec, args) -> list[complex]:
    if args.w is not None:
        return [parse_complex(args.w)]
    return _spec_points(spec, "witnesses") or list(DEFAULT_WITNESSES)


def cmd_index(spec, fn, args):
    _need_kind(spec, "rational")
    _nsym(spec, fn)
    schedule = DEFAULT_SCHEDULE if not args.points else tuple(range(4, max(args.points, 8) + 1, 2))
    rep = verify_index_theorem(fn, _witnesses(spec, args), schedule, seed=args.seed)
    res = {"kappa": rep.notes["kappa"], "point_counts": rep.notes["point_counts"],
           "stabilized": rep.notes["stabilized"], "root_counts": rep.notes["root_counts"]}
    return res, [_check_from_report(rep)], {}


def cmd_roots(spec, fn, args):
    _need_kind(spec, "rational")
    w = parse_complex(args.w) if args.w is not None else -1j
    if not w.imag < 0:
        raise SpecError(f"--w: witness {args.w!r} must lie in the lower half-plane")
    n = count_upper_roots(fn, w)
    return {"w": w, "count": n}, [Check("winding number is an integer", 0.0, 1e-3, "pass")], {}


def cmd_stieltjes(spec, fn, args):
    _need_kind(spec, "herglotz", "rational")
    eps = args.eps if args.eps is not None else 1e-4
    n = args.points or 41
    support = getattr(fn, "support", None)
    lo, hi = support if support is not None else (-2.0, 2.0)
    margin = 0.05 * (hi - lo)
    grid = np.linspace(lo + margin, hi - margin, n)
    for t, _ in getattr(fn, "atoms", ()):
        grid = grid[np.abs(grid - t) >= 10 * eps]
    vals = stieltjes_invert(fn, grid, eps)
    checks = []
    if isinstance(fn, HerglotzRepresentation) and fn.density is not None:
        exact = fn.density(grid)
        err = float(np.max(np.abs(vals - exact))) if len(grid) else 0.0
        checks.append(_simple("density recovery", err, 5e-3 * (1 + float(np.max(exact, initial=0.0)))))
    res = {"eps": eps, "grid": list(grid), "values": list(vals)}
    table = {"header": ["x", "value"], "rows": list(zip(grid, vals))}
    return res, checks, table


def _probe_pairs(points, n_pairs, rng):
    idx = rng.integers(0, len(points), size=(n_pairs, 2))
    return [(points[a], points[b]) for a, b in idx]


def _good_points(funcs, n, rng) -> list[complex]:
    out = []
    while len(out) < n:
        z = complex(rng.uniform(-3, 3), 10 ** rng.uniform(-0.7, 0.7) * rng.choice([-1, 1]))
        try:
            if all(np.isfinite(complex(fn(z))) and abs(complex(fn(z))) > 1e-6 for fn in funcs):
                out.append(z)
        except (PoleError, ZeroDivisionError, DomainError):
            continue
    return out


def cmd_verify_all(spec, fn, args):
    tol = args.tol
    rng = make_rng(args.seed)
    n = args.points or 20
    checks: list[Check] = []
    res: dict = {}
    if spec.kind == "rational":
        _nsym(spec, fn)
        pair = helson_decompose(fn)
        h1, h2 = pair.h1, pair.h2
        s = lambda z: complex(h1(z)) + complex(h2(z))
        pts = _good_points([fn, s, lambda z: 1 + complex(h1(z)), lambda z: 1 + complex(h2(z))], n, rng)
        pairs = _probe_pairs(pts, n, rng)
        checks.append(_simple("reconstruction f = i(h2-h1)/(h2+h1)", pair.certificate, max(tol, 1e-6)))
        cp = coprime_check(h1, h2)
        checks.append(Check("coprime", 0.0, 0.0, "pass" if cp else "fail", {"witnesses": cp.witnesses}))
        checks.append(_check_from_report(verify_sum_decomposition(pair, fn, pairs, tol)))
        for lbl, h in (("h1", h1), ("h2", h2)):
            r = verify_conjugation_identity(h, pairs, tol)
            r.name = f"conjugation identity ({lbl})"
            checks.append(_check_from_report(r))
        w0 = next(z for z in (2j, 3j, 1 + 2j, -1 + 1.5j) if abs(complex(h1(z))) > 1e-8)
        dw_pts = [z for z in pts if abs(z - w0) > 1e-6]
        checks.append(_check_from_report(verify_dw_symbol_identity(h1, w0, dw_pts, max(tol, 1e-9))))
        diag = [z for z in pts if z.imag > 0 and abs(complex(h1(z))) > 1e-6][:5]
        checks.append(_check_from_report(verify_schur_diagonal(h1, diag, max(tol, 1e-6))))
        lam, mu = pts[0], pts[1]
        checks.append(_check_from_report(
            verify_dq_identities(fn, RationalFunction([0, 1]), lam, mu, pts[2:], max(tol, 1e-10))))
        basis = default_basis(4)
        mc = build_model(fn, basis)
        rr = resolvent_residual(mc, basis[0], basis[1])
        checks.append(Check("matrix resolvent identity", rr["lam-mu"]["matrix"], tol,
                            "pass" if max(rr["lam-mu"]["matrix"], rr["lam-mu"]["function"]) < tol else "fail",
                            {"lam-mu": rr["lam-mu"], "mu-lam (printed sign)": rr["mu-lam"]}))
        rec = max(abs(realize_reconstruct(mc, basis[0], z) - complex(fn(z))) for z in pts)
        checks.append(_simple("realization reconstructs f", rec, max(tol, 1e-9)))
        w = next(z for z in (2j, 2.5j, 1 + 2j) if abs(s(z)) > 1e-8)
        test_u = [z for z in pts if z.imag > 0][:2]
        r1 = verify_rank_one_resolvent_difference(pair, w, test_u, pts[:5], tol)
        checks.append(_check_from_report(r1))
        witnesses = _spec_points(spec, "witnesses") or list(DEFAULT_WITNESSES)
        checks.append(_check_from_report(verify_index_theorem(fn, witnesses, seed=args.seed)))
        scan = real_domain_scan(fn, (-10.0, 10.0))
        res["real_obstructions"] = [list(o) for o in scan.obstructions]
        res["kappa"] = checks[-1].details["kappa"]
    elif spec.kind in ("blaschke", "s0-product"):
        h = fn
        pts = _good_points([h, lambda z: 1 + complex(h(z))], n, rng)
        pairs = _probe_pairs(pts, n, rng)
        ctol = max(tol, 1e-9 if h.outer.is_trivial else 1e-7)
        checks.append(_check_from_report(verify_conjugation_identity(h, pairs, ctol)))
        w0 = next(z for z in (2j, 3j, 1 + 2j, -1 + 1.5j) if abs(complex(h(z))) > 1e-8)
        checks.append(_check_from_report(
            verify_dw_symbol_identity(h, w0, [z for z in pts if abs(z - w0) > 1e-6], ctol)))
        upper = [z for z in pts if z.imag > 0]
        G = gram_matrix(schur(h), upper[:6])
        checks.append(_simple("Schur Gram positive semidefinite", max(0.0, -float(G.eigenvalues.min())),
                              1e-10 * max(1.0, float(np.abs(G.eigenvalues).max()))))
    else:
        upper = list(sample_upper(6, args.seed))
        G = gram_matrix(nevanlinna(fn), upper)
        checks.append(_simple("Nevanlinna Gram positive semidefinite", max(0.0, -float(G.eigenvalues.min())),
                              1e-10 * max(1.0, float(np.abs(G.eigenvalues).max()))))
        sym = max(abs(complex(fn(np.conj(z))) - np.conj(complex(fn(z)))) for z in upper)
        checks.append(_simple("symmetry q(conj z) = conj q(z)", sym, max(tol, 1e-8)))
    return res, checks, {}


COMMANDS = {
    "factor": cmd_factor,
    "helson": cmd_helson,
    "gram": cmd_gram,
    "index": cmd_index,
    "roots": cmd_roots,
    "stieltjes": cmd_stieltjes,
    "verify-all": cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boundedtype", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--spec", required=True, help="JSON function spec")
        p.add_argument("--out", default=None, help="report path (default stdout)")
        p.add_argument("--csv", default=None, help="side table path (gram, stieltjes)")
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--points", type=int, default=None)
        p.add_argument("--w", default=None, help='witness in C-, e.g. "-2-1i"')
        p.add_argument("--eps", type=float, default=None)
        p.add_argument("--timing", action="store_true", help="record wall-clock time (breaks byte-identity)")
    return parser


def _emit(report: dict, path: str | None) -> None:
    text = dumps(report)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def emit_report(report: dict, path: str | None) -> None:
    _emit(report, path)


def run_command(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # values like "-1i" would otherwise be read as option flags
    for i in range(len(argv) - 1):
        if argv[i] == "--w":
            argv[i : i + 2] = [f"--w={argv[i + 1]}", ""]
    argv = [a for a in argv if a != ""]
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PASS if exc.code == 0 else EXIT_INPUT
    if args.tol <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_INPUT
    if args.points is not None and args.points < 1:
        print("error: --points must be positive", file=sys.stderr)
        return EXIT_INPUT
    if args.eps is not None and args.eps <= 0:
        print("error: --eps must be positive", file=sys.stderr)
        return EXIT_INPUT

    t0 = time.perf_counter()
    report = {"command": args.command, "version": __version__, "seed": args.seed, "inputs": {}, "checks": []}
    code = EXIT_PASS
    try:
        with open(args.spec, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read spec: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        spec = parse_spec(text)
        report["inputs"] = {"label": spec.label, "kind": spec.kind, "spec": {**spec.payload, **spec.extras}}
        fn = build_function(spec)
        results, checks, table = COMMANDS[args.command](spec, fn, args)
        report["results"] = _plain(results)
        report["checks"] = [c.as_dict() for c in checks]
        statuses = [c.status for c in checks]
        if "fail" in statuses:
            code = EXIT_FAIL
        elif "inconclusive" in statuses:
            code = EXIT_INCONCLUSIVE
        report["pass"] = code == EXIT_PASS
        if args.csv and table:
            write_csv(args.csv, table["header"], table["rows"])
    except (DomainError, PoleError) as exc:
        code = EXIT_INPUT
        print(f"error: {exc}", file=sys.stderr)
        report.update({"pass": False, "error": f"{type(exc).__name__}: {exc}"})
    except (NumericError, BoundedTypeError) as exc:
        code = EXIT_NUMERIC
        print(f"error: {exc}", file=sys.stderr)
        report.update({"pass": False, "error": f"{type(exc).__name__}: {exc}"})
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    report["wall_ms"] = round((time.perf_counter() - t0) * 1000.0, 3) if args.timing else 0
    try:
        emit_report(report, args.out)
    except OSError as exc:
        print(f"error: cannot write report: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return code


def main(argv=None) -> None:
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
