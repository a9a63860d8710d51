"""Truncated Maclaurin evaluation of sn, cn, dn for complex z and m.

Truncation radius
-----------------
For ``|m| <= 1`` every coefficient polynomial has nonnegative integer
coefficients, so ``|s_n(m)| <= s_n(1)`` (same for ``c_n``, ``d_n``). The tail
after index ``T`` is therefore dominated by the tail of the majorant series

    sum_n s_n(1) x^(2n+1)/(2n+1)! = tan x,
    sum_n c_n(1) x^(2n)/(2n)!     = sum_n d_n(1) x^(2n)/(2n)! = sec x,

with ``x = |z|``. The radius is computed as the majorant terms left in the
table past ``T``, plus ``closed_form(x) - (sum of all table majorant terms)``
for whatever lies past the table. That last difference is only resolved to a
few ulp of ``closed_form(x)``, so 16 ulp are added. With tan 1.5 ~ 14.1 this
padding is ~3e-14, so tolerances much below 1e-13 are not reachable near
|z| = 1.5.

For the parameter derivatives the majorant totals are
``sum s_n'(1) x^(2n+1)/(2n+1)! = -d/dmu [sn/cn](x, mu) at mu = 0`` and its
siblings. They follow from the first-order expansion
``sn = sin x - mu a cos x``, ``cn = cos x + mu a sin x``,
``dn = 1 - mu sin^2 x / 2`` with ``a = (x - sin x cos x)/4``.

Table size
----------
Near |z| = 1.5 the majorant terms shrink only like ``(2x/pi)^(2n)``, so about
360 terms are needed for 1e-13. The default table therefore has 400 entries.
Override it with ``ELLIPK_TABLE_N``.
"""

from __future__ import annotations

import math
import os
import weakref
from dataclasses import dataclass
from math import factorial
from pathlib import Path

import numpy as np

from .coeffs import KINDS, CoefficientTable, cached_table, differentiate_polynomial
from .errors import DomainError, TableExhausted

DEFAULT_TOL = 1e-13
DEFAULT_TABLE_N = 400
HALF_PI = math.pi / 2  # rounds below the true value, so `<` is conservative
_PAD_ULPS = 16
_CACHE_VERSION = 1
_EPS = np.finfo(float).eps
_TINY = np.finfo(float).tiny
PARAM_LIMIT = 1.0 + 4 * _EPS


@dataclass(frozen=True)
class EvalResult:
    """A series value with its truncation radius.

    ``error_radius`` bounds ``|partial sum - true value|`` coming from
    truncation. ``rounding_estimate`` is a heuristic size for floating-point
    rounding in the partial sum, which the radius does not cover.
    """

    value: complex
    error_radius: float
    terms_used: int
    rounding_estimate: float = 0.0
    heuristic: bool = False


class SeriesKernel:
    """Floating-point view of a coefficient table, ready for evaluation.

    ``coef[kind][n, j]`` holds ``[m^j] p_n / (2n+1)!`` (sn) or ``/ (2n)!``
    (cn, dn), where ``p_n`` is the kind's n-th coefficient polynomial;
    ``dcoef`` is the same for ``p_n'``. ``maj``/``dmaj`` hold ``p_n(1)`` and
    ``p_n'(1)`` with the same scaling, each correctly rounded from the exact
    integers.
    """

    def __init__(self, max_index, coef, dcoef, maj, dmaj):
        self.max_index = max_index
        # Subnormal entries make BLAS crawl. Each is below 2^-1022 and meets
        # at most |z|^801 < 1e157, so zeroing them moves a value by far less
        # than the radius padding.
        self.coef = {k: _flush(v) for k, v in coef.items()}
        self.dcoef = {k: _flush(v) for k, v in dcoef.items()}
        self.maj = maj
        self.dmaj = dmaj

    @classmethod
    def from_table(cls, table: CoefficientTable) -> "SeriesKernel":
        N = table.max_index
        coef, dcoef, maj, dmaj = {}, {}, {}, {}
        for kind in KINDS:
            fact = [factorial(2 * n + (kind == "sn")) for n in range(N + 1)]
            c = np.zeros((N + 1, N + 1))
            dc = np.zeros((N + 1, N + 1))
            mj = np.zeros(N + 1)
            dmj = np.zeros(N + 1)
            for n, p in enumerate(table.family(kind)):
                f = fact[n]
                c[n, : len(p)] = [a / f for a in p.coeffs]
                mj[n] = p.exact_at(1) / f
                dp = differentiate_polynomial(p)
                dc[n, : len(dp)] = [a / f for a in dp.coeffs]
                dmj[n] = dp.exact_at(1) / f
            coef[kind], dcoef[kind], maj[kind], dmaj[kind] = c, dc, mj, dmj
        return cls(N, coef, dcoef, maj, dmaj)

    def save(self, path) -> None:
        arrays = {"version": np.array(_CACHE_VERSION), "max_index": np.array(self.max_index)}
        for kind in KINDS:
            arrays[f"coef_{kind}"] = self.coef[kind]
            arrays[f"dcoef_{kind}"] = self.dcoef[kind]
            arrays[f"maj_{kind}"] = self.maj[kind]
            arrays[f"dmaj_{kind}"] = self.dmaj[kind]
        path = Path(path)
        tmp = path.with_suffix(f".{os.getpid()}.tmp.npz")
        np.savez(tmp, **arrays)
        os.replace(tmp, path)

    @classmethod
    def load(cls, path) -> "SeriesKernel":
        with np.load(path) as data:
            if int(data["version"]) != _CACHE_VERSION:
                raise ValueError("stale kernel cache")
            N = int(data["max_index"])
            parts = [{k: data[f"{name}_{k}"] for k in KINDS}
                     for name in ("coef", "dcoef", "maj", "dmaj")]
        return cls(N, *parts)

    # ------------------------------------------------------------------
    def evaluate(self, kind, z, m, tol=DEFAULT_TOL, order=None, derivative=False):
        """Vectorised series evaluation.

        Returns ``(values, radii, terms_used, rounding)`` arrays. With
        ``order`` given the series is cut at that index regardless of
        ``tol``; otherwise at the smallest index whose radius is <= ``tol``.
        """
        if kind not in KINDS:
            raise KeyError(kind)
        z, m = np.broadcast_arrays(np.asarray(z, complex), np.asarray(m, complex))
        z = np.ravel(z)
        m = np.ravel(m)
        x = np.abs(z)
        # |m| from different hypot routines can land one ulp either side of 1
        # on the unit circle; a few ulp of slack changes the tail bound by a
        # relative ~1e-13 at most.
        if not (np.all(np.abs(m) <= PARAM_LIMIT)):
            raise DomainError("|m| must be <= 1")
        if not np.all(x < HALF_PI):
            raise DomainError("|z| must be < pi/2 (the series need not converge beyond)")
        N = self.max_index
        odd = kind == "sn"
        maj = (self.dmaj if derivative else self.maj)[kind]
        powers = 2 * np.arange(N + 1) + odd

        with np.errstate(under="ignore"):
            mterms = maj[None, :] * np.power(x[:, None], powers[None, :])
        closed = _majorant_total(kind, derivative, x)
        remainder = closed - mterms.sum(axis=1)
        after = np.zeros_like(mterms)
        after[:, :-1] = np.cumsum(mterms[:, :0:-1], axis=1)[:, ::-1]
        pad = _PAD_ULPS * np.spacing(closed)
        if derivative:
            pad = pad + _PAD_ULPS * _EPS * x  # cancellation in x - sin x cos x
        radius = np.maximum(after + remainder[:, None], 0.0) + pad[:, None]
        radius[x == 0.0, :] = 0.0

        rows = np.arange(len(x))
        if order is None:
            if not tol > 0:
                raise ValueError("tol must be positive")
            ok = radius <= tol
            reached = ok.any(axis=1)
            if not reached.all():
                best = float(radius[~reached, -1].max())
                raise TableExhausted(
                    f"table of size {N} reaches only {best:.3g} > tol {tol:g}; "
                    "raise ELLIPK_TABLE_N or the tolerance",
                    achieved_bound=best, max_index=N)
            last = ok.argmax(axis=1)
        else:
            if not 0 <= order <= N:
                raise TableExhausted(f"order {order} outside table 0..{N}",
                                     max_index=N)
            last = np.full(len(x), int(order))
        radii = radius[rows, last]

        K = int(last.max()) + 1 if len(x) else 1
        mat = (self.dcoef if derivative else self.coef)[kind][:K, :K]
        mpow = np.ones((len(m), K), complex)
        if K > 1:
            mpow[:, 1:] = np.cumprod(np.broadcast_to(m[:, None], (len(m), K - 1)), axis=1)
            _flush(mpow)
        matT = np.ascontiguousarray(mat.T)
        # contiguous copies: BLAS is skipped for the strided .real/.imag views
        polys = (np.ascontiguousarray(mpow.real) @ matT
                 + 1j * (np.ascontiguousarray(mpow.imag) @ matT))
        z2 = z * z
        zpow = np.ones((len(z), K), complex)
        if K > 1:
            zpow[:, 1:] = np.cumprod(np.broadcast_to(z2[:, None], (len(z), K - 1)), axis=1)
        if odd:
            zpow *= z[:, None]
        _flush(zpow)
        sign = np.where(np.arange(K) % 2, -1.0, 1.0)
        terms = polys * zpow * sign
        values = _compensated_prefix(terms, last)
        rounding = (last + 1) * _EPS * closed
        return values, radii, last + 1, rounding


def _flush(a):
    """Zero the subnormal entries of ``a`` in place and return it."""
    parts = (a.real, a.imag) if np.iscomplexobj(a) else (a,)
    for part in parts:
        part[np.abs(part) < _TINY] = 0.0
    return a


def _compensated_prefix(terms, last):
    """Neumaier-compensated ``sum(terms[s, :last[s]+1])`` for each row."""
    re_s = np.zeros(terms.shape[0])
    im_s = np.zeros(terms.shape[0])
    re_c = np.zeros_like(re_s)
    im_c = np.zeros_like(re_s)
    out = np.zeros(terms.shape[0], complex)
    for n in range(terms.shape[1]):
        for s, c, t in ((re_s, re_c, terms[:, n].real), (im_s, im_c, terms[:, n].imag)):
            tot = s + t
            big = np.abs(s) >= np.abs(t)
            c += np.where(big, (s - tot) + t, (t - tot) + s)
            s[...] = tot
        hit = last == n
        if hit.any():
            out[hit] = (re_s[hit] + re_c[hit]) + 1j * (im_s[hit] + im_c[hit])
    return out


def _x_minus_sin(y):
    """``y - sin y`` without cancellation for small ``y``."""
    y = np.asarray(y, float)
    small = np.abs(y) < 0.5
    ys = np.where(small, y, 0.0)
    y2 = ys * ys
    series = np.zeros_like(ys)
    for k in range(8, 0, -1):  # y^3/3! - y^5/5! + ...; y^19/19! < 1e-23 here
        series = y2 * (1.0 / factorial(2 * k + 1) - series)
    series *= ys
    return np.where(small, series, y - np.sin(y))


def _majorant_total(kind, derivative, x):
    """Closed-form sum of the majorant series at real ``x`` in [0, pi/2)."""
    c = np.cos(x)
    if not derivative:
        return np.tan(x) if kind == "sn" else 1.0 / c
    s = np.sin(x)
    a = _x_minus_sin(2.0 * x) / 8.0  # (x - sin x cos x) / 4
    if kind == "sn":
        return a / (c * c)
    if kind == "cn":
        return a * s / (c * c)
    return (0.5 * s * s * c + a * s) / (c * c)


# ----------------------------------------------------------------------
# kernel management

_KERNELS: "weakref.WeakKeyDictionary[CoefficientTable, SeriesKernel]" = weakref.WeakKeyDictionary()
_DEFAULT: dict[int, SeriesKernel] = {}


def default_table_size() -> int:
    raw = os.environ.get("ELLIPK_TABLE_N")
    if raw is None:
        return DEFAULT_TABLE_N
    n = int(raw)
    if n < 0:
        raise ValueError("ELLIPK_TABLE_N must be >= 0")
    return n


def _cache_dir() -> Path | None:
    if os.environ.get("ELLIPK_CACHE", "1") == "0":
        return None
    root = os.environ.get("ELLIPK_CACHE_DIR")
    if root:
        return Path(root)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "ellipk"


def default_kernel() -> SeriesKernel:
    """Kernel for the default table, via an on-disk cache when allowed."""
    N = default_table_size()
    if N in _DEFAULT:
        return _DEFAULT[N]
    kernel = None
    cdir = _cache_dir()
    path = cdir / f"kernel-v{_CACHE_VERSION}-N{N}.npz" if cdir else None
    if path is not None and path.exists():
        try:
            kernel = SeriesKernel.load(path)
        except (OSError, ValueError, KeyError):
            kernel = None
    if kernel is None:
        kernel = kernel_for(cached_table(N))
        if path is not None:
            try:
                path.parent.mkdir(parents=True, exist_ok=True)
                kernel.save(path)
            except OSError:
                pass
    _DEFAULT[N] = kernel
    return kernel


def kernel_for(table: CoefficientTable | None) -> SeriesKernel:
    if table is None:
        return default_kernel()
    kernel = _KERNELS.get(table)
    if kernel is None:
        kernel = _KERNELS[table] = SeriesKernel.from_table(table)
    return kernel


# ----------------------------------------------------------------------
# public evaluation API

def series_many(kind, z, m, tol=DEFAULT_TOL, table=None, *, order=None,
                derivative=False, chunk=1024):
    """Array form of the ``*_series`` functions.

    Returns ``(values, radii, terms_used)`` as arrays of the broadcast shape
    of ``z`` and ``m``.
    """
    kernel = kernel_for(table)
    z, m = np.broadcast_arrays(np.asarray(z, complex), np.asarray(m, complex))
    shape = z.shape
    zf, mf = z.ravel(), m.ravel()
    # group similar |z| so each chunk only builds the columns it needs
    perm = np.argsort(np.abs(zf), kind="stable")
    vals = np.empty(zf.shape, complex)
    rads = np.empty(zf.shape)
    terms = np.empty(zf.shape, int)
    for lo in range(0, len(zf), chunk):
        idx = perm[lo:lo + chunk]
        v, r, t, _ = kernel.evaluate(kind, zf[idx], mf[idx], tol, order, derivative)
        vals[idx], rads[idx], terms[idx] = v, r, t
    return vals.reshape(shape), rads.reshape(shape), terms.reshape(shape)


def series(kind, z, m, tol=DEFAULT_TOL, table=None, *, order=None, derivative=False):
    v, r, t, rnd = kernel_for(table).evaluate(kind, z, m, tol, order, derivative)
    return EvalResult(complex(v[0]), float(r[0]), int(t[0]), float(rnd[0]))


def sn_series(z, m, tol=DEFAULT_TOL, table=None, *, order=None) -> EvalResult:
    """sn(z, m) from its Maclaurin series, cut where the tan-majorant tail <= tol."""
    return series("sn", z, m, tol, table, order=order)


def cn_series(z, m, tol=DEFAULT_TOL, table=None, *, order=None) -> EvalResult:
    return series("cn", z, m, tol, table, order=order)


def dn_series(z, m, tol=DEFAULT_TOL, table=None, *, order=None) -> EvalResult:
    return series("dn", z, m, tol, table, order=order)


def sn_dm_series(z, m, tol=DEFAULT_TOL, table=None, *, order=None) -> EvalResult:
    """d sn/dm by term-wise differentiation of the coefficient polynomials."""
    return series("sn", z, m, tol, table, order=order, derivative=True)


def cn_dm_series(z, m, tol=DEFAULT_TOL, table=None, *, order=None) -> EvalResult:
    return series("cn", z, m, tol, table, order=order, derivative=True)


def dn_dm_series(z, m, tol=DEFAULT_TOL, table=None, *, order=None) -> EvalResult:
    return series("dn", z, m, tol, table, order=order, derivative=True)
