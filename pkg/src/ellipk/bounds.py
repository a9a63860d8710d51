"""Bounds on |sn|, |cn|, |dn| for complex z and complex parameter m.

For ``|m| <= 1``, ``|z| < pi/2`` and ``m1 = 1 - |m|``::

    |sn(z, m)| <= sn(|z|, m1) / cn(|z|, m1) <= tan|z|
    |cn(z, m)| <= 1 / cn(|z|, m1)           <= 1 / cos|z|
    |dn(z, m)| <= dn(|z|, m1) / cn(|z|, m1) <= 1 / cos|z|

The left side comes from the series path; the middle ("sharp") bound from
the real AGM oracle. Both inequalities are equalities at ``z = 0`` and on
the imaginary axis when ``m = 1``. On the imaginary axis with real
``m >= 0`` only the first one is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .agm import jacobi_real_agm, jacobi_real_agm_array
from .errors import DomainError, PoleError
from .series import DEFAULT_TOL, HALF_PI, series_many

FUNCTIONS = ("sn", "cn", "dn")


class EqualityCase(str, Enum):
    NONE = "none"
    ORIGIN = "origin"
    # z on the imaginary axis and m == 1 (so m1 == 0): both bounds are tight
    IMAGINARY_AXIS_M1_EQUALS_ONE = "imaginary_axis_m1_equals_one"
    # z on the imaginary axis, m real and >= 0: the sharp bound is tight
    IMAGINARY_AXIS_M_NONNEG_REAL = "imaginary_axis_m_nonneg_real"


@dataclass(frozen=True)
class ChainRecord:
    lhs: float
    sharp: float
    coarse: float
    margin_sharp: float
    margin_coarse: float
    eval_error: float

    @property
    def passed(self) -> bool:
        slack = -2.0 * self.eval_error
        return self.margin_sharp >= slack and self.margin_coarse >= slack

    def to_json_obj(self) -> dict:
        return {
            "lhs": self.lhs,
            "sharp": self.sharp,
            "coarse": self.coarse,
            "margin_sharp": self.margin_sharp,
            "margin_coarse": self.margin_coarse,
            "eval_error": self.eval_error,
            "passed": self.passed,
        }


def _cjson(w: complex) -> dict:
    return {"re": w.real, "im": w.imag}


@dataclass(frozen=True)
class BoundReport:
    z: complex
    m: complex
    m1: float
    sn: ChainRecord
    cn: ChainRecord
    dn: ChainRecord
    equality_case: EqualityCase
    index: int | None = None
    seed: int | None = None

    def record(self, name: str) -> ChainRecord:
        return getattr(self, name)

    @property
    def passed(self) -> bool:
        return self.sn.passed and self.cn.passed and self.dn.passed

    def to_json_obj(self) -> dict:
        out = {}
        if self.index is not None:
            out["index"] = self.index
        if self.seed is not None:
            out["seed"] = self.seed
        out.update(z=_cjson(self.z), m=_cjson(self.m), m1=self.m1)
        for name in FUNCTIONS:
            out[name] = self.record(name).to_json_obj()
        out["equality_case"] = self.equality_case.value
        out["passed"] = self.passed
        return out


def classify_equality(z: complex, m: complex) -> EqualityCase:
    """Exact predicates on the inputs; callers wanting slack snap beforehand."""
    if z == 0:
        return EqualityCase.ORIGIN
    if z.real == 0:
        if m == 1:
            return EqualityCase.IMAGINARY_AXIS_M1_EQUALS_ONE
        if m.imag == 0 and m.real >= 0:
            return EqualityCase.IMAGINARY_AXIS_M_NONNEG_REAL
    return EqualityCase.NONE


def _check_abs_z(abs_z) -> None:
    a = np.asarray(abs_z, float)
    if not np.all((a >= 0) & (a < HALF_PI)):
        raise DomainError("|z| must lie in [0, pi/2)")


def sharp_bounds(abs_z: float, m1: float) -> tuple[float, float, float]:
    """``(sn/cn, 1/cn, dn/cn)`` at real argument ``abs_z`` and parameter ``m1``."""
    _check_abs_z(abs_z)
    sn, cn, dn = jacobi_real_agm(abs_z, m1)
    if not cn > 0:
        raise PoleError(f"cn({abs_z}, {m1}) = {cn} is not positive")
    return sn / cn, 1.0 / cn, dn / cn


def coarse_bounds(abs_z: float) -> tuple[float, float]:
    _check_abs_z(abs_z)
    return math.tan(abs_z), 1.0 / math.cos(abs_z)


def _sharp_bounds_array(abs_z, m1):
    _check_abs_z(abs_z)
    sn, cn, dn = jacobi_real_agm_array(abs_z, m1)
    if not np.all(cn > 0):
        raise PoleError("cn is not positive for some sample")
    return sn / cn, 1.0 / cn, dn / cn


def check_theorem_many(z, m, tol=DEFAULT_TOL, table=None, *, seed=None, first_index=None):
    """Evaluate both bound chains for arrays of ``(z, m)``; one report each."""
    z = np.ravel(np.asarray(z, complex))
    m = np.ravel(np.asarray(m, complex))
    z, m = np.broadcast_arrays(z, m)
    abs_z = np.abs(z)
    m1 = np.maximum(1.0 - np.abs(m), 0.0)
    lhs = {}
    err = {}
    for name in FUNCTIONS:
        v, r, _ = series_many(name, z, m, tol, table)
        lhs[name], err[name] = np.abs(v), r
    s1, s2, s3 = _sharp_bounds_array(abs_z, m1)
    sharp = {"sn": s1, "cn": s2, "dn": s3}
    tan_b = np.tan(abs_z)
    sec_b = 1.0 / np.cos(abs_z)
    coarse = {"sn": tan_b, "cn": sec_b, "dn": sec_b}

    reports = []
    for i in range(len(z)):
        recs = {}
        for name in FUNCTIONS:
            l, s, c = float(lhs[name][i]), float(sharp[name][i]), float(coarse[name][i])
            recs[name] = ChainRecord(l, s, c, s - l, c - s, float(err[name][i]))
        zi, mi = complex(z[i]), complex(m[i])
        reports.append(BoundReport(
            zi, mi, float(m1[i]), recs["sn"], recs["cn"], recs["dn"],
            classify_equality(zi, mi),
            index=None if first_index is None else first_index + i,
            seed=seed))
    return reports


def check_theorem(z: complex, m: complex, tol: float = DEFAULT_TOL, table=None) -> BoundReport:
    """Both bound chains at one point."""
    return check_theorem_many([z], [m], tol, table)[0]


def _real_parameter(m) -> float:
    m = complex(m)
    if m.imag != 0 or not 0.0 <= m.real <= 1.0:
        raise DomainError("the imaginary transformation is only exposed for real m in [0, 1]")
    return m.real


def _imag_parts(y: float, m) -> tuple[float, float, float]:
    mr = _real_parameter(m)
    y = float(y)
    if not abs(y) < HALF_PI:
        raise DomainError("|y| must be < pi/2")
    sn, cn, dn = jacobi_real_agm(y, 1.0 - mr)
    if not cn > 0:
        raise PoleError(f"cn({y}, {1.0 - mr}) = {cn} is not positive")
    return sn, cn, dn


# The tol argument is kept for call compatibility with the series functions;
# the AGM route has no truncation to control.
def imag_transform_sn(y: float, m, tol: float | None = None) -> complex:
    """sn(iy, m) = i sn(y, 1-m) / cn(y, 1-m), for real m in [0, 1]."""
    sn, cn, _ = _imag_parts(y, m)
    return complex(0.0, sn / cn)


def imag_transform_cn(y: float, m, tol: float | None = None) -> complex:
    """cn(iy, m) = 1 / cn(y, 1-m)."""
    _, cn, _ = _imag_parts(y, m)
    return complex(1.0 / cn, 0.0)


def imag_transform_dn(y: float, m, tol: float | None = None) -> complex:
    """dn(iy, m) = dn(y, 1-m) / cn(y, 1-m)."""
    _, cn, dn = _imag_parts(y, m)
    return complex(dn / cn, 0.0)
