"""Real-parameter sn, cn, dn by descending Landen transformation (AGM).

Used as the independent oracle for real argument and parameter in [0, 1];
it shares no code with the series path.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

_MAX_STEPS = 40


def _check_param(m1) -> None:
    m1 = np.asarray(m1, dtype=float)
    if not np.all((m1 >= 0.0) & (m1 <= 1.0)):
        raise DomainError("parameter must lie in [0, 1]")


def jacobi_real_agm(u: float, m1: float) -> tuple[float, float, float]:
    """``(sn, cn, dn)`` of real ``u`` at parameter ``m1`` in [0, 1]."""
    _check_param(m1)
    u = float(u)
    m1 = float(m1)
    if m1 == 1.0:
        sech = 1.0 / math.cosh(u)
        return math.tanh(u), sech, sech
    a = 1.0
    b = math.sqrt(1.0 - m1)
    c = math.sqrt(m1)
    aa = [a]
    cc = [c]
    while c > 2.0 ** -53 * a and len(aa) <= _MAX_STEPS:
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        if c <= 2.0 ** -53 * a:
            c = 0.0
        aa.append(a)
        cc.append(c)
    steps = len(aa) - 1
    phi = math.ldexp(aa[-1] * u, steps)
    prev = phi
    for k in range(steps, 0, -1):
        prev = phi
        phi = 0.5 * (phi + math.asin(cc[k] / aa[k] * math.sin(phi)))
    cn = math.cos(phi)
    dn = cn / math.cos(prev - phi) if steps else 1.0
    return math.sin(phi), cn, dn


def jacobi_real_agm_array(u, m1):
    """Vectorised :func:`jacobi_real_agm`; ``u`` and ``m1`` broadcast."""
    u, m1 = np.broadcast_arrays(np.asarray(u, float), np.asarray(m1, float))
    _check_param(m1)
    hyper = m1 == 1.0
    mm = np.where(hyper, 0.5, m1)  # m1 = 1 never converges; handled below
    a = np.ones_like(mm)
    b = np.sqrt(1.0 - mm)
    c = np.sqrt(mm)
    aa = [a]
    cc = [c]
    # Once c underflows to 0 further steps only halve phi exactly, so a
    # common step count gives the same answer as per-element stopping.
    while np.any(c > 2.0 ** -53 * a) and len(aa) <= _MAX_STEPS:
        a, b, c = 0.5 * (a + b), np.sqrt(a * b), 0.5 * (a - b)
        c = np.where(c > 2.0 ** -53 * a, c, 0.0)
        aa.append(a)
        cc.append(c)
    steps = len(aa) - 1
    phi = np.ldexp(aa[-1] * u, steps)
    prev = phi
    for k in range(steps, 0, -1):
        prev = phi
        phi = 0.5 * (phi + np.arcsin(cc[k] / aa[k] * np.sin(phi)))
    sn = np.sin(phi)
    cn = np.cos(phi)
    dn = cn / np.cos(prev - phi) if steps else np.ones_like(cn)
    sech = 1.0 / np.cosh(u)
    sn = np.where(hyper, np.tanh(u), sn)
    cn = np.where(hyper, sech, cn)
    dn = np.where(hyper, sech, dn)
    return sn, cn, dn
