"""Decrease in the parameter of f1 = sn/cn, f2 = 1/cn, f3 = dn/cn.

For fixed real ``u`` in ``(0, pi/2)`` all three functions decrease strictly
as the parameter ``m1`` runs over ``[0, 1]``. ``f_j`` takes ``m1`` directly
in the parameter slot, so the derivative is the plain parameter derivative
with no sign flip.

Derivatives come from the quotient rule applied to the parameter-derivative
series. Each one is cross-checked against a finite difference of the AGM
values, which share no code with the series.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bounds import sharp_bounds
from .errors import ConsistencyError, DomainError
from .series import (
    HALF_PI,
    cn_dm_series,
    cn_series,
    dn_dm_series,
    dn_series,
    sn_dm_series,
    sn_series,
)

DEFAULT_H = 1e-5
# The parameter-derivative series converge a little more slowly than the
# functions themselves; 1e-11 is reachable at every |u| < 1.5.
DERIVATIVE_TOL = 1e-11
REL_AGREEMENT = 1e-5
ABS_AGREEMENT = 1e-8


def default_u_grid(count: int = 15, u_max: float = 1.5) -> list[float]:
    """``count`` points from 0.1 up to ``u_max``, evenly spaced."""
    if count < 1:
        raise DomainError("u grid needs at least one point")
    if count == 1:
        return [0.1]
    step = (u_max - 0.1) / (count - 1)
    return [round(0.1 + i * step, 12) for i in range(count)]


def default_m1_grid(count: int = 21) -> list[float]:
    if count < 2:
        raise DomainError("m1 grid needs at least two points")
    return [i / (count - 1) for i in range(count)]


def f_values(u: float, m1: float) -> tuple[float, float, float]:
    """``(sn/cn, 1/cn, dn/cn)`` at ``(u, m1)``; the same code path as the sharp bounds."""
    return sharp_bounds(u, m1)


def _check(u: float, m1: float) -> None:
    if not 0.0 <= u < HALF_PI:
        raise DomainError("u must lie in [0, pi/2)")
    if not 0.0 <= m1 <= 1.0:
        raise DomainError("m1 must lie in [0, 1]")


def analytic_derivatives(u: float, m1: float, tol: float = DERIVATIVE_TOL):
    """Quotient rule over the series and their parameter derivatives."""
    _check(u, m1)
    if u == 0.0:
        return 0.0, 0.0, 0.0
    sn = sn_series(u, m1).value.real
    cn = cn_series(u, m1).value.real
    dn = dn_series(u, m1).value.real
    dsn = sn_dm_series(u, m1, tol).value.real
    dcn = cn_dm_series(u, m1, tol).value.real
    ddn = dn_dm_series(u, m1, tol).value.real
    cn2 = cn * cn
    return (
        (dsn * cn - sn * dcn) / cn2,
        -dcn / cn2,
        (ddn * cn - dn * dcn) / cn2,
    )


def numeric_derivatives(u: float, m1: float, h: float = DEFAULT_H):
    """Finite differences of :func:`f_values`, second order in ``h``.

    Central where ``m1 +- h`` stays inside ``[0, 1]``, otherwise the
    three-point one-sided formula pointing into the interval.
    """
    _check(u, m1)
    if not h > 0:
        raise DomainError("h must be positive")
    if m1 - h >= 0.0 and m1 + h <= 1.0:
        lo, hi = f_values(u, m1 - h), f_values(u, m1 + h)
        return tuple((b - a) / (2 * h) for a, b in zip(lo, hi))
    if m1 + 2 * h <= 1.0:
        f0, f1, f2 = (f_values(u, m1 + k * h) for k in range(3))
        return tuple((-3 * a + 4 * b - c) / (2 * h) for a, b, c in zip(f0, f1, f2))
    if m1 - 2 * h >= 0.0:
        f0, f1, f2 = (f_values(u, m1 - k * h) for k in range(3))
        return tuple((3 * a - 4 * b + c) / (2 * h) for a, b, c in zip(f0, f1, f2))
    raise DomainError("h is too large for a difference stencil inside [0, 1]")


def _agree(a: float, n: float) -> bool:
    return abs(a - n) <= max(REL_AGREEMENT * abs(n), ABS_AGREEMENT)


def f_derivatives(u: float, m1: float, h: float = DEFAULT_H) -> tuple[float, float, float]:
    """Parameter derivatives of ``f1, f2, f3``, checked against finite differences.

    Raises :class:`ConsistencyError` if any of the three disagrees beyond
    1e-5 relative (1e-8 absolute near zero).
    """
    analytic = analytic_derivatives(u, m1)
    numeric = numeric_derivatives(u, m1, h)
    for j, (a, n) in enumerate(zip(analytic, numeric), start=1):
        if not _agree(a, n):
            raise ConsistencyError(
                f"df{j} at u={u}, m1={m1}: analytic {a!r} vs finite difference {n!r}",
                analytic=a, numeric=n)
    return analytic


@dataclass(frozen=True)
class MonotonicityReport:
    u: float
    m1_grid: tuple[float, ...]
    df1: tuple[float, ...]
    df2: tuple[float, ...]
    df3: tuple[float, ...]
    min_abs_derivative: float
    all_negative: bool
    # f_j strictly decreasing between consecutive grid points (False at u = 0)
    sampled_decreasing: bool

    @property
    def degenerate(self) -> bool:
        return self.u == 0.0

    def to_json_obj(self) -> dict:
        return {
            "u": self.u,
            "m1": list(self.m1_grid),
            "df1": list(self.df1),
            "df2": list(self.df2),
            "df3": list(self.df3),
            "min_abs_derivative": self.min_abs_derivative,
            "all_negative": self.all_negative,
            "sampled_decreasing": self.sampled_decreasing,
            "degenerate": self.degenerate,
        }


def _check_grid(m1_grid: Sequence[float]) -> tuple[float, ...]:
    g = tuple(float(x) for x in m1_grid)
    if not g:
        raise DomainError("empty m1 grid")
    if any(not 0.0 <= x <= 1.0 for x in g):
        raise DomainError("m1 grid must lie in [0, 1]")
    if any(b <= a for a, b in zip(g, g[1:])):
        raise DomainError("m1 grid must be strictly increasing")
    return g


def verify_row(u: float, m1_grid: Sequence[float], h: float = DEFAULT_H) -> MonotonicityReport:
    grid = _check_grid(m1_grid)
    u = float(u)
    ders = [f_derivatives(u, m1, h) for m1 in grid]
    cols = tuple(tuple(d[j] for d in ders) for j in range(3))
    flat = [x for col in cols for x in col]
    if u > 0.0:
        all_neg = all(x < 0.0 for x in flat)
        vals = [f_values(u, m1) for m1 in grid]
        decreasing = all(
            a[j] > b[j] for a, b in zip(vals, vals[1:]) for j in range(3))
    else:
        all_neg = False
        decreasing = False
    return MonotonicityReport(
        u, grid, *cols, min(abs(x) for x in flat), all_neg, decreasing)


def verify_monotone(u_grid: Sequence[float], m1_grid: Sequence[float],
                    h: float = DEFAULT_H) -> list[MonotonicityReport]:
    """One report per ``u``; rows with ``u = 0`` are flagged degenerate."""
    return [verify_row(u, m1_grid, h) for u in u_grid]
