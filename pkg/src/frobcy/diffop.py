"""Ordinary differential operators in theta form and their series solutions.

An operator is stored as an integer coefficient table for

    L = P_0(theta) + z P_1(theta) + ... + z^d P_d(theta),   theta = z d/dz,

with overall integer content extracted.  The unique normalized power-series
solution of a MUM operator (P_0 = theta^n) is produced by the recurrence

    P_0(n) c_n = - sum_{i>=1} P_i(n - i) c_{n-i},

either with exact big integers (primary path) or modulo p^K with pessimistic
precision tracking.  Conversion to the monic d/dz form uses

    theta^k = sum_j S(k, j) z^j D^j,

where the S(k, j) are Stirling numbers of the second kind, generated by the
rewriting rule theta * z^j D^j = z^(j+1) D^(j+1) + j z^j D^j.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence

from .polyrat import RatPoly, RationalFunction

try:
    from gmpy2 import mpz
except ImportError:  # pragma: no cover - gmpy2 is a soft dependency
    mpz = int


class NonIntegralSolution(ArithmeticError):
    """The exact series recurrence produced a non-integer coefficient."""


class PrecisionExhausted(ArithmeticError):
    """Modular series solving ran out of certified p-adic digits."""


def _int_content_sign(rows: Sequence[Sequence[int]]) -> int:
    g = 0
    for row in rows:
        for c in row:
            g = gcd(g, abs(c))
    if g == 0:
        raise ValueError("zero operator")
    # sign convention: constant coefficient of the leading symbol positive,
    # falling back to the first nonzero coefficient overall
    lead = 0
    order = max(len(row) for row in rows) - 1
    for row in rows:
        c = row[order] if len(row) > order else 0
        if c:
            lead = c
            break
    if lead == 0:
        for row in rows:
            for c in row:
                if c:
                    lead = c
                    break
            if lead:
                break
    return -g if lead < 0 else g


class ThetaOperator:
    """Integer-coefficient operator sum_i z^i P_i(theta), content-extracted.

    ``coeffs[i][j]`` is the coefficient of z^i theta^j.  All rows are padded
    to length theta_order + 1.
    """

    __slots__ = ("coeffs", "name", "aesz")

    def __init__(self, rows: Sequence[Sequence[int]], name: str = "",
                 aesz: Optional[int] = None):
        rows = [list(map(int, row)) for row in rows]
        while rows and not any(rows[-1]):
            rows.pop()
        if not rows:
            raise ValueError("zero operator")
        order = max((len(row) - 1) for row in rows)
        while order > 0 and all(len(row) <= order or row[order] == 0 for row in rows):
            order -= 1
        g = _int_content_sign([row[: order + 1] for row in rows])
        self.coeffs: tuple = tuple(
            tuple((row[j] if j < len(row) else 0) // g for j in range(order + 1))
            for row in rows
        )
        self.name = name
        self.aesz = aesz

    # -- structure -----------------------------------------------------------

    @property
    def theta_order(self) -> int:
        return len(self.coeffs[0]) - 1

    @property
    def z_degree(self) -> int:
        return len(self.coeffs) - 1

    def theta_poly(self, i: int) -> List[int]:
        """Coefficient list of P_i(theta) (ascending)."""
        return list(self.coeffs[i]) if 0 <= i < len(self.coeffs) else [0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ThetaOperator):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        label = self.name or "operator"
        return f"ThetaOperator({label}, order {self.theta_order}, z-degree {self.z_degree})"

    # -- JSON interchange ------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({
            "name": self.name,
            "aesz": self.aesz,
            "theta_order": self.theta_order,
            "coeffs": [[str(c) for c in row] for row in self.coeffs],
        }, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "ThetaOperator":
        data = json.loads(text)
        rows = [[int(c) for c in row] for row in data["coeffs"]]
        op = cls(rows, name=data.get("name", ""), aesz=data.get("aesz"))
        if op.theta_order != data["theta_order"]:
            raise ValueError("theta_order does not match the coefficient table")
        return op


def check_mum(op: ThetaOperator) -> bool:
    """True iff P_0(theta) = theta^n exactly (maximal unipotent monodromy)."""
    n = op.theta_order
    p0 = op.theta_poly(0)
    return p0[n] == 1 and all(c == 0 for c in p0[:n])


def leading_symbol(op: ThetaOperator) -> RatPoly:
    """D(z) = sum_i z^i [theta^n] P_i: zero locus = singular points."""
    n = op.theta_order
    return RatPoly([row[n] for row in op.coeffs])


def symbol_roots_mod_p(op: ThetaOperator, p: int) -> List[int]:
    """Roots of the leading symbol in F_p^* (by direct scan)."""
    sym = [int(c) % p for c in leading_symbol(op).integer_coeffs()]
    out = []
    for z0 in range(1, p):
        acc = 0
        for c in reversed(sym):
            acc = (acc * z0 + c) % p
        if acc == 0:
            out.append(z0)
    return out


# -- series solutions ---------------------------------------------------------


@dataclass
class TruncatedSeries:
    """Power-series truncation c_0 + c_1 z + ... + c_N z^N with c_0 = 1.

    ``modulus`` is None for exact integer coefficients; otherwise coefficients
    are residues mod prime^cap of which ``guaranteed`` digits are certified
    (series-wide minimum).
    """

    coeffs: list
    prime: Optional[int] = None
    cap: Optional[int] = None
    guaranteed: Optional[int] = None

    def __post_init__(self) -> None:
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("normalized series must start with c_0 = 1")

    @property
    def order(self) -> int:
        """Truncation order N (degree of the last kept coefficient)."""
        return len(self.coeffs) - 1

    @property
    def modulus(self) -> Optional[int]:
        return None if self.prime is None else self.prime**self.cap

    def truncate(self, N: int) -> "TruncatedSeries":
        """f^(N): the truncation of degree <= N (N + 1 coefficients)."""
        if N > self.order:
            raise ValueError(f"series holds only {self.order + 1} coefficients")
        return TruncatedSeries(self.coeffs[: N + 1], self.prime, self.cap,
                               self.guaranteed)

    def evaluate_mod(self, x: int, modulus: int) -> int:
        """Horner evaluation of the truncation at an integer residue."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % modulus
        return acc


def solve_series(op: ThetaOperator, N: int, p: Optional[int] = None,
                 K: Optional[int] = None, mode: str = "exact") -> TruncatedSeries:
    """Normalized solution c_0 = 1 of a MUM operator, truncated at degree N.

    mode="exact": big-integer recurrence; every division must be exact
    (NonIntegralSolution otherwise).  When (p, K) are given, finished
    coefficients are stored reduced mod p^K while only the trailing window
    needed by the recurrence stays exact.

    mode="modular": all arithmetic mod p^K with pessimistic precision
    tracking; dividing by P_0(n) = n^order costs order * v_p(n) certified
    digits and PrecisionExhausted is raised when fewer than one would remain.
    """
    if not check_mum(op):
        raise ValueError("series solving requires a MUM operator")
    if mode not in ("exact", "modular"):
        raise ValueError(f"unknown mode {mode!r}")
    order = op.theta_order
    d = op.z_degree
    # P_i(m) evaluators over plain ints (coefficients are small)
    polys = [op.theta_poly(i) for i in range(d + 1)]

    def peval(i: int, m: int) -> int:
        acc = 0
        for c in reversed(polys[i]):
            acc = acc * m + c
        return acc

    if N < 0:
        raise ValueError("truncation order must be >= 0")
    w = max(d, 1)
    if mode == "exact":
        if p is not None and K is None:
            raise ValueError("storage reduction needs both p and K")
        reduce_mod = None if p is None else p**K
        window = [mpz(1)] + [mpz(0)] * (w - 1)
        out = [1]
        for n in range(1, N + 1):
            s = mpz(0)
            for i in range(1, min(n, d) + 1):
                s += peval(i, n - i) * window[(n - i) % w]
            p0 = peval(0, n)  # = n^order for MUM
            cn, rem = divmod(-s, p0)
            if rem:
                raise NonIntegralSolution(
                    f"coefficient c_{n} is not an integer (operator {op.name or '?'})"
                )
            window[n % w] = cn
            out.append(int(cn % reduce_mod) if reduce_mod else int(cn))
        if reduce_mod:
            return TruncatedSeries(out, p, K, K)
        return TruncatedSeries(out)

    # modular mode
    if p is None or K is None:
        raise ValueError("modular mode requires p and K")
    pK = p**K
    guaranteed = K
    out = [1]
    window = [1] + [0] * (w - 1)
    for n in range(1, N + 1):
        s = 0
        for i in range(1, min(n, d) + 1):
            s = (s + peval(i, n - i) * window[(n - i) % w]) % pK
        s = (-s) % pK
        m, v = n, 0
        while m % p == 0:
            m //= p
            v += 1
        loss = order * v
        if loss:
            if loss >= guaranteed:
                raise PrecisionExhausted(
                    f"dividing by P_0({n}) needs {loss} digits, "
                    f"only {guaranteed} certified"
                )
            guaranteed -= loss
            s //= p**loss
        unit = pow(m, order, pK)
        cn = s * pow(unit, -1, pK) % pK
        window[n % w] = cn
        out.append(cn)
    return TruncatedSeries(out, p, K, guaranteed)


# -- theta form <-> monic d/dz form --------------------------------------------


def stirling_table(n: int) -> List[List[int]]:
    """T[k][j] with theta^k = sum_j T[k][j] z^j D^j (Stirling, second kind)."""
    T = [[1]]
    for k in range(1, n + 1):
        prev = T[-1]
        row = [0] * (k + 1)
        for j, c in enumerate(prev):
            if c:
                row[j + 1] += c          # theta * z^j D^j -> z^(j+1) D^(j+1)
                row[j] += j * c          # ... + j z^j D^j
        T.append(row)
    return T


@dataclass
class MonicForm:
    """Monic d/dz form D^n + a_{n-1} D^{n-1} + ... + a_0, a_i in Q(z)."""

    order: int
    a: List[RationalFunction]  # a[0] .. a[order-1]


def to_monic(op: ThetaOperator) -> MonicForm:
    n = op.theta_order
    T = stirling_table(n)
    q = [RatPoly([row[k] for row in op.coeffs]) for k in range(n + 1)]
    x = RatPoly.x()
    lead = (x**n) * q[n]
    if lead.is_zero():
        raise ValueError("degenerate operator: zero leading coefficient")
    a = []
    for j in range(n):
        Aj = RatPoly.zero()
        for k in range(j, n + 1):
            if T[k][j] if j < len(T[k]) else 0:
                Aj = Aj + q[k] * T[k][j]
        a.append(RationalFunction((x**j) * Aj, lead))
    return MonicForm(n, a)


# -- differential-operator algebra over Q(z) (for the self-duality checks) ----


def _dop_compose_linear(coeffs: List[RationalFunction],
                        h: RationalFunction) -> List[RationalFunction]:
    """(sum e_i D^i) o (D - h) expanded via D^i o h = sum binom(i,m) h^(m) D^(i-m)."""
    out = [RationalFunction.zero()] * (len(coeffs) + 1)
    # shift part: e_i D^(i+1)
    for i, e in enumerate(coeffs):
        out[i + 1] = out[i + 1] + e
    # -e_i * (D^i o h)
    for i, e in enumerate(coeffs):
        if e.is_zero():
            continue
        hm = h
        binom = 1
        for m in range(i + 1):
            out[i - m] = out[i - m] - e * (binom * hm)
            if m < i:
                binom = binom * (i - m) // (m + 1)
                hm = hm.derivative()
    return out


def _dop_substitute(coeffs: List[RationalFunction],
                    h: RationalFunction) -> List[RationalFunction]:
    """Replace D by (D - h) throughout, by Horner in the Weyl algebra."""
    acc = [coeffs[-1]]
    for j in range(len(coeffs) - 2, -1, -1):
        acc = _dop_compose_linear(acc, h)
        acc[0] = acc[0] + coeffs[j]
    return acc


def _dop_adjoint(coeffs: List[RationalFunction]) -> List[RationalFunction]:
    """Formal adjoint (sum c_j D^j)* = sum (-D)^j o c_j."""
    n = len(coeffs) - 1
    out = [RationalFunction.zero()] * (n + 1)
    for j, c in enumerate(coeffs):
        if c.is_zero():
            continue
        sign = -1 if j % 2 else 1
        cm = c
        binom = 1
        for m in range(j + 1):
            out[j - m] = out[j - m] + (sign * binom) * cm
            if m < j:
                binom = binom * (j - m) // (m + 1)
                cm = cm.derivative()
    return out


def _normalized_form(op: ThetaOperator) -> List[RationalFunction]:
    """Monic coefficients conjugated by exp(-int a_{n-1}/n): kills D^(n-1)."""
    mf = to_monic(op)
    n = mf.order
    coeffs = mf.a + [RationalFunction.one()]
    h = mf.a[n - 1] * Fraction(1, n)
    return _dop_substitute(coeffs, h)


def check_cy4(op: ThetaOperator) -> bool:
    """Self-duality for order 4: with b = coefficients of the conjugated
    operator D^4 + b_2 D^2 + b_1 D + b_0, the condition is b_1 = b_2'.

    Equivalently, in terms of the monic coefficients,
    a_1 = (1/2) a_2 a_3 - (1/8) a_3^3 + a_2' - (3/4) a_3 a_3' - (1/2) a_3''.
    """
    if op.theta_order != 4:
        raise ValueError("check_cy4 expects a fourth-order operator")
    mf = to_monic(op)
    a0, a1, a2, a3 = mf.a
    half, eighth, threequarter = Fraction(1, 2), Fraction(1, 8), Fraction(3, 4)
    rhs = (half * (a2 * a3) - eighth * (a3 * a3 * a3) + a2.derivative()
           - threequarter * (a3 * a3.derivative())
           - half * a3.derivative().derivative())
    return (a1 - rhs).is_zero()


def check_cy5(op: ThetaOperator) -> bool:
    """Self-duality for order 5 (anti-self-adjoint after conjugation):
    with D^5 + c_3 D^3 + c_2 D^2 + c_1 D + c_0, the two conditions are
    c_2 = (3/2) c_3' and c_0 = (1/2) c_1' - (1/4) c_3'''.
    """
    if op.theta_order != 5:
        raise ValueError("check_cy5 expects a fifth-order operator")
    c = _normalized_form(op)
    c0, c1, c2, c3 = c[0], c[1], c[2], c[3]
    cond1 = (c2 - Fraction(3, 2) * c3.derivative()).is_zero()
    d3c3 = c3.derivative().derivative().derivative()
    cond2 = (c0 - Fraction(1, 2) * c1.derivative() + Fraction(1, 4) * d3c3).is_zero()
    return cond1 and cond2
