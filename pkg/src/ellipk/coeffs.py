"""Exact Maclaurin coefficient polynomials of sn, cn and dn.

With ``sn(z, m) = sum (-1)^n s_n(m) z^(2n+1)/(2n+1)!`` and likewise
``cn``/``dn`` over ``z^(2n)/(2n)!``, every ``s_n``, ``c_n``, ``d_n`` is a
polynomial in ``m`` with nonnegative integer coefficients.

Generation works on even z-derivatives written as polynomials in
``y = sn(z, m)``:

* ``sn^(2n)  = P_n(y)``        (odd powers of y), ``s_n = (-1)^n [y^1] P_n``
* ``cn^(2n)  = cn * R_n(y)``   (even powers),     ``c_n = (-1)^n R_n(0)``
* ``dn^(2n)  = dn * S_n(y)``   (even powers),     ``d_n = (-1)^n S_n(0)``

Differentiating twice with ``sn' = cn dn``, ``cn' = -sn dn``,
``dn' = -m sn cn`` maps a monomial ``y^k`` to three neighbours
``y^(k-2), y^k, y^(k+2)`` with weights linear in ``m`` (see ``_WEIGHTS``).
Each y-row is a polynomial in ``m`` stored Kronecker-packed as one Python
integer evaluated at ``m = 2^B``, so a step is shifts, adds and small-integer
multiplies. Rows that can no longer reach the constant/linear term before
step ``N`` are dropped.

Cost is O(N^3 log N!) bit operations; N = 400 takes several seconds, which
is why :func:`cached_table` exists. Memory peaks around a few hundred MB near
N = 500; treat N ~ 600 as the practical ceiling.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from gmpy2 import mpz

KINDS = ("sn", "cn", "dn")


@dataclass(frozen=True)
class IntegerPolynomial:
    """Polynomial in ``m`` with exact integer coefficients, lowest power first.

    The zero polynomial is the empty tuple; query :attr:`is_zero` before
    :attr:`degree`.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = tuple(int(a) for a in self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("degree of the zero polynomial is undefined")
        return len(self.coeffs) - 1

    def __call__(self, m):
        return eval_polynomial(self, m)

    def exact_at(self, m: int) -> int:
        """Value at an integer point, in integer arithmetic."""
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * m + a
        return acc

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __repr__(self) -> str:
        return f"IntegerPolynomial({list(self.coeffs)})"


def eval_polynomial(p: IntegerPolynomial, m):
    """Horner evaluation in floating point, highest power first."""
    acc = 0.0
    for a in reversed(p.coeffs):
        acc = acc * m + a
    return acc


def differentiate_polynomial(p: IntegerPolynomial) -> IntegerPolynomial:
    return IntegerPolynomial(tuple(i * a for i, a in enumerate(p.coeffs) if i))


@dataclass(frozen=True, eq=False)
class CoefficientTable:
    """The three families ``s_n, c_n, d_n`` for ``n = 0..max_index``."""

    sn: tuple[IntegerPolynomial, ...]
    cn: tuple[IntegerPolynomial, ...]
    dn: tuple[IntegerPolynomial, ...]

    @property
    def max_index(self) -> int:
        return len(self.sn) - 1

    def family(self, kind: str) -> tuple[IntegerPolynomial, ...]:
        if kind not in KINDS:
            raise KeyError(kind)
        return getattr(self, kind)

    def to_json_obj(self) -> dict:
        polys = [
            {"kind": kind, "n": n, "coeffs": [str(a) for a in p.coeffs]}
            for kind in KINDS
            for n, p in enumerate(self.family(kind))
        ]
        return {"max_index": self.max_index, "polynomials": polys}

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":")) + "\n"

    @classmethod
    def from_json_obj(cls, obj: dict) -> "CoefficientTable":
        fam: dict[str, list] = {k: [] for k in KINDS}
        for rec in obj["polynomials"]:
            lst = fam[rec["kind"]]
            if rec["n"] != len(lst):
                raise ValueError("polynomials must be listed in index order")
            lst.append(IntegerPolynomial(tuple(int(s) for s in rec["coeffs"])))
        return cls(*(tuple(fam[k]) for k in KINDS))


# Source power k -> (down weight to y^(k-2), same-power constant part,
# same-power m part, up weight times m to y^(k+2)). Same-power terms carry
# a minus sign.
_WEIGHTS = {
    "sn": lambda k: (k * (k - 1), k * k, k * k, k * (k + 1)),
    "cn": lambda k: (k * (k - 1), (k + 1) ** 2, k * k, (k + 1) * (k + 2)),
    "dn": lambda k: (k * (k - 1), k * k, (k + 1) ** 2, (k + 1) * (k + 2)),
}
# power of y held by row i
_POWER = {"sn": lambda i: 2 * i + 1, "cn": lambda i: 2 * i, "dn": lambda i: 2 * i}


def _step(rows: Sequence, kind: str, keep: int, shift: int) -> list:
    """One double differentiation; ``shift`` is the slot width (``m -> <<shift``)."""
    w = _WEIGHTS[kind]
    power = _POWER[kind]
    n_rows = len(rows)
    new = []
    for i in range(min(n_rows + 1, keep)):
        plain = 0
        with_m = 0
        if i + 1 < n_rows:
            plain = w(power(i + 1))[0] * rows[i + 1]
        if i < n_rows:
            _, a, b, _ = w(power(i))
            plain -= a * rows[i]
            with_m = -b * rows[i]
        if i >= 1:
            with_m += w(power(i - 1))[3] * rows[i - 1]
        new.append(plain + (with_m << shift))
    return new


def _slot_schedule(kind: str, max_index: int) -> list[int]:
    """Bits needed per step so every intermediate coefficient fits its slot.

    Runs the recurrence on per-row majorants (all weights made positive,
    ``m`` set to 1), which bounds the absolute value of every coefficient.
    Entry ``n`` covers the rows that exist after ``n`` steps. Two bits are
    added: sign, plus a guard bit for the decode check.
    """
    bound = [1]
    need = [3]
    for n in range(max_index):
        bound = _step_majorant(bound, kind, max_index - n)
        need.append(max(bound).bit_length() + 2)
    return need


def _step_majorant(rows, kind, keep):
    w = _WEIGHTS[kind]
    power = _POWER[kind]
    new = []
    for i in range(min(len(rows) + 1, keep)):
        acc = 0
        if i + 1 < len(rows):
            acc += w(power(i + 1))[0] * rows[i + 1]
        if i < len(rows):
            _, a, b, _ = w(power(i))
            acc += (a + b) * rows[i]
        if i >= 1:
            acc += w(power(i - 1))[3] * rows[i - 1]
        new.append(acc)
    return new


def _digits(value, slot: int, n_slots: int) -> list[int]:
    """Balanced base-2^slot digits of a packed row (lowest first)."""
    nb = slot // 8
    raw = int(value).to_bytes(nb * n_slots, "little", signed=True)
    full = 1 << slot
    half = full >> 1
    out = []
    carry = 0
    for j in range(n_slots):
        d = int.from_bytes(raw[j * nb:(j + 1) * nb], "little") + carry
        if d >= half:
            d -= full
            carry = 1
        else:
            carry = 0
        out.append(d)
    return out


def _pack(digits: Sequence[int], slot: int):
    nb = slot // 8
    pos = b"".join((d if d > 0 else 0).to_bytes(nb, "little") for d in digits)
    neg = b"".join((-d if d < 0 else 0).to_bytes(nb, "little") for d in digits)
    return mpz(int.from_bytes(pos, "little")) - mpz(int.from_bytes(neg, "little"))


def _round_slot(bits: int) -> int:
    return -(-bits // 8) * 8


def _family(kind: str, max_index: int) -> tuple[IntegerPolynomial, ...]:
    need = _slot_schedule(kind, max_index)
    final = _round_slot(max(need))
    slot = _round_slot(need[0])
    rows = [mpz(1)]
    out = []
    for n in range(max_index + 1):
        head = _digits(rows[0], slot, n + 2)
        if head[-1] != 0:
            raise AssertionError(f"{kind}_{n} exceeds degree {n}")
        sign = -1 if n % 2 else 1
        coeffs = [sign * d for d in head[:-1]]
        if any(c < 0 for c in coeffs):
            raise AssertionError(f"{kind}_{n} has a negative coefficient")
        out.append(IntegerPolynomial(tuple(coeffs)))
        if n == max_index:
            break
        if need[n + 1] > slot:
            # grow by ~25% at a time so repacking stays rare
            wider = min(final, _round_slot(max(need[n + 1], slot * 5 // 4)))
            rows = [_pack(_digits(r, slot, n + 2), wider) for r in rows]
            slot = wider
        rows = _step(rows, kind, max_index - n, slot)
    return tuple(out)


def generate_table(max_index: int) -> CoefficientTable:
    """Exact ``s_n, c_n, d_n`` for ``n = 0..max_index``."""
    if max_index < 0:
        raise ValueError("max_index must be >= 0")
    table = CoefficientTable(*(_family(kind, max_index) for kind in KINDS))
    _check_table(table)
    return table


def _check_table(table: CoefficientTable) -> None:
    for n in range(table.max_index + 1):
        s, c, d = table.sn[n], table.cn[n], table.dn[n]
        if any(a <= 0 for a in s) or any(a <= 0 for a in c):
            raise AssertionError(f"non-positive coefficient at n={n}")
        if n and (d.coeffs[0] != 0 or any(a <= 0 for a in d.coeffs[1:])):
            raise AssertionError(f"d_{n} has the wrong shape")
        if c.exact_at(1) != d.exact_at(1):
            raise AssertionError(f"c_{n}(1) != d_{n}(1)")


@lru_cache(maxsize=4)
def cached_table(max_index: int) -> CoefficientTable:
    """Process-wide memo of :func:`generate_table`."""
    return generate_table(max_index)
