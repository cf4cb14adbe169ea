"""Named example functions and boundary densities used by the CLI and the tests."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import DomainError
from .funclib import Polynomial, RationalFunction

# (function, expected kappa); coefficients ascending
FUNCTIONS: dict[str, tuple[RationalFunction, int]] = {
    "z": (RationalFunction([0, 1]), 0),
    "-1/z": (RationalFunction([-1], [0, 1]), 0),
    "z^2": (RationalFunction([0, 0, 1]), 1),
    "z^3": (RationalFunction([0, 0, 0, 1]), 1),
    "(z^3-z)/(z^2+1)": (RationalFunction([0, -1, 0, 1], [1, 0, 1]), 1),
    "z+1/(1-z^2)": (RationalFunction([1, 1, 0, -1], [1, 0, -1]), 1),
}


def catalog_function(name: str) -> RationalFunction:
    try:
        return FUNCTIONS[name][0]
    except KeyError:
        raise DomainError(f"unknown catalog function {name!r}; choose from {sorted(FUNCTIONS)}") from None


DENSITIES = ("constant", "box", "rational_modulus")


def make_density(name: str, params: dict) -> tuple[Callable[[np.ndarray], np.ndarray], tuple[float, float] | None]:
    """Density t -> value and its support (None for the whole line).

    constant(c): c everywhere. box(lo, hi, height): height on [lo, hi], 0
    elsewhere. rational_modulus(num, den): |num(t) / den(t)| with ascending
    real coefficients.
    """
    if name == "constant":
        c = float(_need(params, "c", name))
        return (lambda t: np.full(np.shape(t), c)), None
    if name == "box":
        lo, hi = float(_need(params, "lo", name)), float(_need(params, "hi", name))
        height = float(_need(params, "height", name))
        if not lo < hi:
            raise DomainError("box density needs lo < hi")
        return (lambda t: np.full(np.shape(t), height)), (lo, hi)
    if name == "rational_modulus":
        num = Polynomial(_need(params, "num", name))
        den = Polynomial(_need(params, "den", name))
        if den.is_zero:
            raise DomainError("rational_modulus density has a zero denominator")
        return (lambda t: np.abs(num(np.asarray(t, float)) / den(np.asarray(t, float)))), None
    raise DomainError(f"unknown density {name!r}; choose from {list(DENSITIES)}")


def make_log_density(name: str, params: dict) -> tuple[Callable[[np.ndarray], np.ndarray], tuple[float, float] | None]:
    """Boundary log-modulus for outer factors.

    constant(c): log c. box(lo, hi, height): height on [lo, hi] (a log value),
    0 elsewhere. rational_modulus(num, den):
    log|num(t)/den(t)|.
    """
    if name == "constant":
        c = float(_need(params, "c", name))
        if c <= 0:
            raise DomainError("constant outer modulus must be positive")
        v = np.log(c)
        return (lambda t: np.full(np.shape(t), v)), None
    if name == "box":
        lo, hi = float(_need(params, "lo", name)), float(_need(params, "hi", name))
        height = float(_need(params, "height", name))
        if not lo < hi:
            raise DomainError("box density needs lo < hi")
        return (lambda t: np.full(np.shape(t), height)), (lo, hi)
    if name == "rational_modulus":
        num = Polynomial(_need(params, "num", name))
        den = Polynomial(_need(params, "den", name))
        return (lambda t: np.log(np.abs(num(np.asarray(t, float)) / den(np.asarray(t, float))))), None
    raise DomainError(f"unknown density {name!r}; choose from {list(DENSITIES)}")


def _need(params: dict, key: str, name: str):
    if key not in params:
        raise DomainError(f"density {name!r} requires field {key!r}")
    return params[key]
