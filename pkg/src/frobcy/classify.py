"""Classification of Frobenius quartics over the catalog, and the eta-product
forms attached to split points.

Every ordinary point yields integers (a, b); the quartic then either

  * stays irreducible with all reciprocal roots of modulus p^(3/2): smooth,
    cell "(a,b)";
  * factors as (1 + alpha T + p^3 T^2)(1 + beta T + p^3 T^2) with
    |alpha|, |beta| <= 2 p^(3/2): reducible, cell "(a,b)'";
  * splits as (1 - chi p T)(1 - chi p^2 T)(1 - a_p T + p^3 T^2) with
    chi = +-1 and |a_p| <= 2 p^(3/2): split/singular, cell "(a,b)*" --
    asserted only where the leading symbol vanishes mod p (the coefficient
    p + p^2 of the paired linear factors exceeds 2 p^(3/2), so the two
    factored branches can never be confused);
  * fits none of those shapes yet fails the modulus pairing: inconsistent,
    cell "(a,b)!" -- reported rather than silently passed off as smooth;
  * or the point is outside the unit disk of either series: cell "-".

The a_p at split points are matched against eta-product q-expansions: the
built-in forms are

    8/1:  eta(q^2)^4 eta(q^4)^4 = q - 4q^3 - 2q^5 + 24q^7 - ...
    9/1:  eta(q^3)^8           = q - 8q^4 + 20q^7 - ...

and further fixtures can be supplied as JSON files in FROBCY_FORMS_DIR.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from math import isqrt
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .congruence import OutsideUnitDisk
from .diffop import ThetaOperator, TruncatedSeries, solve_series, symbol_roots_mod_p
from .frobenius import assemble_frobenius, required_precision, unit_roots, weil_verify

FORMS_DIR_ENV = "FROBCY_FORMS_DIR"


class NoFixture(LookupError):
    """No stored modular form matches the requested coefficient."""


# -- eta products -------------------------------------------------------------------


def _pentagonal_product(m: int, N: int) -> List[int]:
    """Coefficients of prod_n (1 - q^(m n)) mod q^(N+1), by the pentagonal
    number expansion sum_k (-1)^k q^(m k(3k-1)/2)."""
    out = [0] * (N + 1)
    out[0] = 1
    k = 1
    while True:
        hit = False
        for e in (m * k * (3 * k - 1) // 2, m * k * (3 * k + 1) // 2):
            if e <= N:
                out[e] += -1 if k % 2 else 1
                hit = True
        if not hit:
            return out
        k += 1


def _series_mul(a: List[int], b: List[int], N: int) -> List[int]:
    out = [0] * (N + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(min(len(b), N + 1 - i)):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


@dataclass(frozen=True)
class EtaProduct:
    """Product prod eta(q^m)^(e_m), with integral leading q-power."""

    label: str
    factors: Tuple[Tuple[int, int], ...]  # ((m, e), ...)

    @property
    def weight(self) -> int:
        total = sum(e for _m, e in self.factors)
        if total % 2:
            raise ValueError("eta exponents must sum to an even number")
        return total // 2

    def q_shift(self) -> int:
        total = sum(m * e for m, e in self.factors)
        if total % 24:
            raise ValueError("eta product with fractional leading power")
        return total // 24

    def expand(self, N: int) -> List[int]:
        """q-expansion coefficients c_0 .. c_N (c[q_shift] = 1)."""
        shift = self.q_shift()
        out = [0] * (N + 1)
        if shift > N:
            return out
        body = [1]
        for m, e in self.factors:
            base = _pentagonal_product(m, N - shift)
            power = [1]
            n = e
            while n:
                if n & 1:
                    power = _series_mul(power, base, N - shift)
                base = _series_mul(base, base, N - shift)
                n >>= 1
            body = _series_mul(body, power, N - shift)
        for i, c in enumerate(body):
            out[shift + i] = c
        return out

    def coefficient(self, n: int) -> int:
        return self.expand(n)[n]


BUILTIN_FORMS: Dict[str, EtaProduct] = {
    "8/1": EtaProduct("8/1", ((2, 4), (4, 4))),
    "9/1": EtaProduct("9/1", ((3, 8),)),
}


def _external_forms(forms_dir: Optional[str]) -> List[Tuple[str, Dict[int, int]]]:
    """(label, {p: a_p}) for every JSON fixture in the forms directory."""
    directory = forms_dir or os.environ.get(FORMS_DIR_ENV)
    if not directory:
        return []
    out = []
    for path in sorted(Path(directory).glob("*.json")):
        data = json.loads(path.read_text())
        out.append((str(data["label"]),
                    {int(k): int(v) for k, v in data["ap"].items()}))
    return out


def match_singular_ap(p: int, ap: int, forms_dir: Optional[str] = None) -> str:
    """Label of the first stored form whose p-th coefficient equals ap.

    Built-in eta products are tried first, then JSON fixtures from
    ``forms_dir`` (default: the FROBCY_FORMS_DIR environment variable).
    Raises NoFixture when nothing matches.
    """
    for label, form in BUILTIN_FORMS.items():
        if form.coefficient(p) == ap:
            return label
    for label, table in _external_forms(forms_dir):
        if table.get(p) == ap:
            return label
    raise NoFixture(f"no stored form has a_{p} = {ap}")


# -- quartic splitting --------------------------------------------------------------


def reducible_split(a: int, b: int, p: int) -> Optional[Tuple[int, int]]:
    """(alpha, beta) with P = (1 + alpha T + p^3 T^2)(1 + beta T + p^3 T^2)
    and |alpha|, |beta| <= 2 p^(3/2), or None."""
    disc = a * a - 4 * (b * p - 2 * p**3)
    if disc < 0:
        return None
    r = isqrt(disc)
    if r * r != disc or (a + r) % 2:
        return None
    alpha, beta = (a + r) // 2, (a - r) // 2
    bound_sq = 4 * p**3
    if alpha * alpha > bound_sq or beta * beta > bound_sq:
        return None
    return alpha, beta


def singular_split(a: int, b: int, p: int) -> Optional[Tuple[int, int]]:
    """(chi, a_p) with P = (1 - chi p T)(1 - chi p^2 T)(1 - a_p T + p^3 T^2)
    and |a_p| <= 2 p^(3/2), or None."""
    for chi in (1, -1):
        ap = -a - chi * (p + p * p)
        if b * p == 2 * p**3 + chi * (p + p * p) * ap and ap * ap <= 4 * p**3:
            return chi, ap
    return None


# -- point classification -----------------------------------------------------------


@dataclass
class PointClass:
    """Classification of one (operator, p, z0) cell."""

    operator: str
    p: int
    z0: int
    status: str          # smooth | reducible | singular | inconsistent | undefined
    at_singular_fiber: bool
    a: Optional[int] = None
    b: Optional[int] = None
    alpha: Optional[int] = None
    beta: Optional[int] = None
    chi: Optional[int] = None
    ap: Optional[int] = None
    form: Optional[str] = None

    def cell(self) -> str:
        """Compact table cell: (a,b) / (a,b)' / (a,b)* / (a,b)! / - ."""
        if self.status == "undefined":
            return "-"
        mark = {"smooth": "", "reducible": "'", "singular": "*",
                "inconsistent": "!"}[self.status]
        return f"({self.a},{self.b}){mark}"


def classify_ab(a: int, b: int, p: int, at_singular_fiber: bool) -> PointClass:
    """Classify a computed (a, b) pair (no series work).

    Away from a vanishing leading symbol the pair is never labeled singular:
    if it satisfies the chi-split identity anyway, the factorization it
    implies carries a linear coefficient p + p^2 beyond the reducible bound,
    so the pair lands in "inconsistent" via the modulus check instead.
    """
    pc = PointClass(operator="", p=p, z0=0, status="smooth",
                    at_singular_fiber=at_singular_fiber, a=a, b=b)
    if at_singular_fiber:
        split = singular_split(a, b, p)
        if split is not None:
            pc.status = "singular"
            pc.chi, pc.ap = split
            try:
                pc.form = match_singular_ap(p, pc.ap)
            except NoFixture:
                pc.form = None
            return pc
    pair = reducible_split(a, b, p)
    if pair is not None:
        pc.status = "reducible"
        pc.alpha, pc.beta = pair
        return pc
    if not weil_verify(a, b, p):
        pc.status = "inconsistent"
    return pc


def classify_point(op: ThetaOperator, p: int, z0: int, s: int,
                   f0: TruncatedSeries, F0: TruncatedSeries) -> PointClass:
    """Classify one point given precomputed series of both factors."""
    fiber = z0 % p in set(symbol_roots_mod_p(op, p))
    try:
        r1, rh = unit_roots(f0, F0, z0, p, s)
    except OutsideUnitDisk:
        return PointClass(operator=op.name, p=p, z0=z0, status="undefined",
                          at_singular_fiber=fiber)
    a, b = assemble_frobenius(r1, rh, p, at_singular_fiber=fiber)
    pc = classify_ab(a, b, p, fiber)
    pc.operator, pc.z0 = op.name, z0
    return pc


def classify_operator(op: ThetaOperator, p: int,
                      wedge_op: Optional[ThetaOperator] = None,
                      s: Optional[int] = None,
                      f0: Optional[TruncatedSeries] = None,
                      F0: Optional[TruncatedSeries] = None) -> List[PointClass]:
    """Classify all points z0 = 1 .. p-1 of one operator.

    The working precision defaults to ``required_precision`` with split-point
    resolution exactly when the leading symbol has roots mod p.  The two
    series (the expensive part) are computed once and shared by all points;
    precomputed ones may be passed in.
    """
    roots = symbol_roots_mod_p(op, p)
    if s is None:
        s = required_precision(p, want_singular=bool(roots))
    N = p**s - 1
    if f0 is None:
        f0 = solve_series(op, N, p=p, K=s)
    if F0 is None:
        if wedge_op is None:
            from .wedge import wedge_square
            wedge_op = wedge_square(op)
        F0 = solve_series(wedge_op, N, p=p, K=s)
    return [classify_point(op, p, z0, s, f0, F0) for z0 in range(1, p)]


# -- tabular output -----------------------------------------------------------------

CSV_COLUMNS = ("operator", "p", "z", "status", "a", "b",
               "alpha", "beta", "chi", "ap", "form")


def results_to_csv(rows: List[PointClass]) -> str:
    """CSV text (header + one line per point, empty fields where N/A)."""
    def fmt(v) -> str:
        return "" if v is None else str(v)

    lines = [",".join(CSV_COLUMNS)]
    for r in rows:
        lines.append(",".join([
            r.operator, str(r.p), str(r.z0), r.status, fmt(r.a), fmt(r.b),
            fmt(r.alpha), fmt(r.beta), fmt(r.chi), fmt(r.ap), fmt(r.form),
        ]))
    return "\n".join(lines) + "\n"
