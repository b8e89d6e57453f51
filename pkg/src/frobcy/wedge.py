"""Exterior squares of fourth-order operators and horizontal sections.

A fourth-order MUM operator L acts on the rank-4 module with basis
omega, theta omega, theta^2 omega, theta^3 omega.  The induced rank-6
exterior square carries the Leibniz action

    theta (a ^ b) = (theta a) ^ b + a ^ (theta b),

and eta := z * omega ^ (d/dz omega) = omega ^ theta omega generates it.
``wedge_square`` returns the minimal monic operator Q with Q(eta) = 0,
computed purely by exact linear algebra over Q(z) -- the only route used;
no closed-form product formula enters.

``f0_wedge_via_wronskian`` rebuilds the normalized solution of Q as
w = f0^2 + z (f0 g' - f0' g), where f0 + (f0 log z + g) is the Frobenius
pair of solutions at 0.

``verify_horizontal_u4`` / ``verify_horizontal_u5`` assemble the twisted
horizontal sections built from a rational function Y with Y'/Y equal to
(1/2) a_3 resp. (2/5) b_4 and check nabla u = 0 coefficient by coefficient
on truncated (Laurent) series.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Optional, Tuple

from .diffop import ThetaOperator, check_cy5, check_mum, solve_series, to_monic
from .polyrat import (NoSolution, RatPoly, RationalFunction, poly_gcd,
                      rational_roots, solve_linear_system)


class UnexpectedOrder(ArithmeticError):
    """The minimal operator of eta does not have order 5.

    Order below 5 would mean dependent theta-iterates (kernel of the linear
    system); order 6 — no order-5 relation at all — is what actually occurs
    when the input lacks the order-4 self-duality."""


class NotRationalY(ArithmeticError):
    """exp of the required integral is not a rational function."""


# -- differential modules -------------------------------------------------------


class DifferentialModule:
    """Free Q(z)-module with a theta-action given column-wise.

    ``action[j]`` is theta(e_j) as a coefficient vector; on a general vector,
    theta(sum v_j e_j) = sum (theta v_j) e_j + v_j * theta(e_j) with
    theta v = z * dv/dz.
    """

    def __init__(self, action: List[List[RationalFunction]]):
        self.rank = len(action)
        for col in action:
            if len(col) != self.rank:
                raise ValueError("action matrix must be square")
        self.action = action

    @classmethod
    def from_operator(cls, op: ThetaOperator) -> "DifferentialModule":
        """Rank-n module on omega, theta omega, ..., theta^(n-1) omega."""
        n = op.theta_order
        qs = [RatPoly([row[k] for row in op.coeffs]) for k in range(n + 1)]
        cols = []
        for j in range(n - 1):
            col = [RationalFunction.zero() for _ in range(n)]
            col[j + 1] = RationalFunction.one()
            cols.append(col)
        top = [RationalFunction(-qs[k], qs[n]) for k in range(n)]
        cols.append(top)
        return cls(cols)

    def apply_theta(self, vec: List[RationalFunction]) -> List[RationalFunction]:
        z = RationalFunction(RatPoly.x())
        out = [z * v.derivative() for v in vec]
        for j, v in enumerate(vec):
            if v.is_zero():
                continue
            for i in range(self.rank):
                if not self.action[j][i].is_zero():
                    out[i] = out[i] + v * self.action[j][i]
        return out

    def wedge_module(self) -> Tuple["DifferentialModule", List[Tuple[int, int]]]:
        """Exterior square with the Leibniz theta-action.

        Returns the rank-(n choose 2) module and its ordered basis of index
        pairs (a, b), a < b, for e_a ^ e_b.
        """
        n = self.rank
        pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
        index = {pair: k for k, pair in enumerate(pairs)}
        cols = []
        for (a, b) in pairs:
            col = [RationalFunction.zero() for _ in range(len(pairs))]

            def add(i: int, j: int, coef: RationalFunction) -> None:
                if i == j or coef.is_zero():
                    return
                if i < j:
                    col[index[(i, j)]] = col[index[(i, j)]] + coef
                else:
                    col[index[(j, i)]] = col[index[(j, i)]] - coef

            for i in range(n):
                add(i, b, self.action[a][i])   # (theta e_a) ^ e_b
                add(a, i, self.action[b][i])   # e_a ^ (theta e_b)
            cols.append(col)
        return DifferentialModule(cols), pairs


# -- the fifth-order companion ---------------------------------------------------


def wedge_square(op: ThetaOperator) -> ThetaOperator:
    """Minimal monic operator annihilating eta = e_0 ^ e_1, order exactly 5.

    The relation is found by solving the 6x5 linear system
    [theta^0 eta ... theta^4 eta] x = theta^5 eta exactly over Q(z), then
    clearing denominators to the canonical integer form (content 1, positive
    leading constant).  Raises UnexpectedOrder when the iterates are linearly
    dependent before order 5.
    """
    if op.theta_order != 4:
        raise ValueError("wedge_square expects a fourth-order operator")
    if not check_mum(op):
        raise ValueError("wedge_square expects a MUM operator")
    module = DifferentialModule.from_operator(op)
    wmod, pairs = module.wedge_module()
    eta = [RationalFunction.zero() for _ in range(wmod.rank)]
    eta[pairs.index((0, 1))] = RationalFunction.one()
    iterates = [eta]
    for _ in range(5):
        iterates.append(wmod.apply_theta(iterates[-1]))

    matrix = [[iterates[k][i] for k in range(5)] for i in range(wmod.rank)]
    rhs = [iterates[5][i] for i in range(wmod.rank)]
    try:
        solution, kernel_dim = solve_linear_system(matrix, rhs)
    except NoSolution as exc:
        raise UnexpectedOrder("theta-iterates span no order-5 relation") from exc
    if kernel_dim > 0:
        raise UnexpectedOrder(
            f"eta satisfies a relation of order < 5 (kernel dimension {kernel_dim})"
        )

    # theta^5 eta - sum_k x_k theta^k eta = 0
    cs = [-x for x in solution] + [RationalFunction.one()]
    den = RatPoly.one()
    for c in cs:
        g = poly_gcd(den, c.den)
        den = den * (c.den.exact_div(g) if g.degree > 0 else c.den)
    polys = [c.num * den.exact_div(c.den) for c in cs]
    scale = 1
    for poly in polys:
        for coef in poly.coeffs:
            scale = lcm(scale, coef.denominator)
    z_deg = max(poly.degree for poly in polys)

    def as_int(q: Fraction) -> int:
        if q.denominator != 1:
            raise ArithmeticError("denominator clearing failed")
        return q.numerator

    rows = [[as_int(polys[k][i] * scale) for k in range(6)]
            for i in range(z_deg + 1)]
    out = ThetaOperator(rows, name=f"wedge({op.name})" if op.name else "wedge",
                        aesz=None)
    if not check_mum(out) or not check_cy5(out):
        raise UnexpectedOrder("exterior square fails its structural checks")
    return out


def f0_wedge_via_wronskian(op: ThetaOperator, N: int) -> List[Fraction]:
    """Solution of the exterior square from the Frobenius pair of ``op``.

    With y_1 = f0 and y_2 = f0 log z + g the normalized wedge solution is
    w = z (y_1 y_2' - y_1' y_2) = f0^2 + z (f0 g' - f0' g); the coefficients
    of g are produced by the exact rational log-solution recurrence
    P_0(n) g_n = -sum_{i>=1} P_i(n-i) g_{n-i} - sum_{i>=0} P_i'(n-i) c_{n-i}.
    """
    if not check_mum(op):
        raise ValueError("the log-solution recurrence requires a MUM operator")
    d = op.z_degree
    c = [Fraction(v) for v in solve_series(op, N).coeffs]
    polys = [op.theta_poly(i) for i in range(d + 1)]
    dpolys = [[k * pc[k] for k in range(1, len(pc))] for pc in polys]

    def ev(coeffs, m):
        acc = Fraction(0)
        for v in reversed(coeffs):
            acc = acc * m + v
        return acc

    g = [Fraction(0)] * (N + 1)
    for n in range(1, N + 1):
        s = Fraction(0)
        for i in range(1, min(n, d) + 1):
            s += ev(polys[i], n - i) * g[n - i]
        for i in range(0, min(n, d) + 1):
            s += ev(dpolys[i], n - i) * c[n - i]
        g[n] = -s / ev(polys[0], n)

    w = []
    for n in range(N + 1):
        acc = Fraction(0)
        for a in range(n + 1):
            acc += c[a] * c[n - a]
        m = n - 1
        if m >= 0:
            for a in range(m + 1):
                acc += c[a] * (m - a + 1) * g[m - a + 1]
                acc -= (a + 1) * c[a + 1] * g[m - a]
        w.append(acc)
    return w


# -- truncated Laurent series over Q ---------------------------------------------


class _Laurent:
    """Finite-precision Laurent series: coefficients for z^val .. z^(prec-1)."""

    __slots__ = ("val", "prec", "coeffs")

    def __init__(self, val: int, coeffs: List[Fraction], prec: int):
        while coeffs and coeffs[0] == 0:
            coeffs = coeffs[1:]
            val += 1
        while len(coeffs) > max(prec - val, 0):
            coeffs.pop()
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            val = prec  # the zero series has valuation >= prec
        self.val, self.prec, self.coeffs = val, prec, coeffs

    @classmethod
    def from_series(cls, coeffs, prec: Optional[int] = None) -> "_Laurent":
        cs = [Fraction(c) for c in coeffs]
        return cls(0, cs, len(cs) if prec is None else prec)

    @classmethod
    def from_ratfun(cls, f: RationalFunction, prec: int) -> "_Laurent":
        if f.is_zero():
            return cls(0, [], prec)
        num, den = f.num, f.den
        nv = 0
        while num[nv] == 0:
            nv += 1
        dv = 0
        while den[dv] == 0:
            dv += 1
        val = nv - dv
        n_terms = prec - val
        if n_terms <= 0:
            return cls(val, [], prec)
        ncs = [num[nv + i] for i in range(n_terms)]
        dcs = [den[dv + i] for i in range(n_terms)]
        inv0 = 1 / dcs[0]
        out = []
        for i in range(n_terms):
            acc = ncs[i]
            for j in range(1, i + 1):
                acc -= dcs[j] * out[i - j]
            out.append(acc * inv0)
        return cls(val, out, prec)

    def coefficient(self, k: int) -> Fraction:
        if k >= self.prec:
            raise ValueError(f"coefficient z^{k} beyond precision {self.prec}")
        if k < self.val or k - self.val >= len(self.coeffs):
            return Fraction(0)
        return self.coeffs[k - self.val]

    def __add__(self, other: "_Laurent") -> "_Laurent":
        prec = min(self.prec, other.prec)
        if not self.coeffs:
            return _Laurent(other.val, list(other.coeffs), prec)
        if not other.coeffs:
            return _Laurent(self.val, list(self.coeffs), prec)
        val = min(self.val, other.val)
        out = [Fraction(0)] * (prec - val)
        for i, c in enumerate(self.coeffs):
            k = self.val + i
            if k < prec:
                out[k - val] += c
        for i, c in enumerate(other.coeffs):
            k = other.val + i
            if k < prec:
                out[k - val] += c
        return _Laurent(val, out, prec)

    def __neg__(self) -> "_Laurent":
        return _Laurent(self.val, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other: "_Laurent") -> "_Laurent":
        return self + (-other)

    def __mul__(self, other: "_Laurent") -> "_Laurent":
        prec = min(self.prec + other.val, other.prec + self.val)
        if not self.coeffs or not other.coeffs:
            return _Laurent(0, [], prec)
        val = self.val + other.val
        out = [Fraction(0)] * max(prec - val, 0)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k >= len(out):
                    break
                out[k] += a * b
        return _Laurent(val, out, prec)

    def derivative(self) -> "_Laurent":
        """d/dz; precision drops by one."""
        out = [(self.val + i) * c for i, c in enumerate(self.coeffs)]
        return _Laurent(self.val - 1, out, self.prec - 1)

    def is_zero_up_to(self, k_max: int) -> bool:
        """All coefficients of z^k, k <= k_max, vanish (certified)."""
        if self.prec <= k_max:
            raise ValueError(
                f"cannot certify vanishing to order {k_max} at precision {self.prec}")
        for i, c in enumerate(self.coeffs):
            if self.val + i > k_max:
                break
            if c:
                return False
        return True


# -- rational exponentials -------------------------------------------------------


def rational_exp_integral(g: RationalFunction) -> RationalFunction:
    """A rational Y with Y'/Y = g, up to a constant factor.

    Y is rational iff g is a Z-linear combination of logarithmic derivatives
    f'/f: g must be proper with square-free denominator and integer residues.
    Raises NotRationalY otherwise.
    """
    if g.is_zero():
        return RationalFunction.one()
    num, den = g.num, g.den
    if num.degree >= den.degree:
        raise NotRationalY("nonzero polynomial part in the logarithmic derivative")
    if poly_gcd(den, den.derivative()).degree > 0:
        raise NotRationalY("higher-order pole in the logarithmic derivative")
    roots, cofactor = rational_roots(den)
    dden = den.derivative()
    result = RationalFunction.one()
    consumed = RationalFunction.zero()
    for rho, _mult in roots:
        residue = num.evaluate(rho) / dden.evaluate(rho)
        if residue.denominator != 1:
            raise NotRationalY(f"non-integer residue {residue} at z = {rho}")
        m = int(residue)
        lin = RationalFunction(RatPoly((-rho, 1)))
        result = result * lin**m
        consumed = consumed + RationalFunction(RatPoly.constant(m),
                                               RatPoly((-rho, 1)))
    rest = g - consumed
    if cofactor.degree > 0:
        # rest must equal m * cofactor' / cofactor for a single integer m
        cof = RationalFunction(cofactor)
        ratio = rest * cof / RationalFunction(cofactor.derivative())
        if not ratio.is_polynomial() or ratio.num.degree > 0:
            raise NotRationalY("irrational residues on a nonlinear factor")
        m = ratio.num[0]
        if m.denominator != 1:
            raise NotRationalY(f"non-integer residue {m} on a nonlinear factor")
        result = result * cof**int(m)
        rest = rest - RationalFunction(cofactor.derivative() * int(m), cofactor)
    if not rest.is_zero():
        raise NotRationalY("logarithmic derivative decomposition failed")
    return result


# -- horizontal sections ----------------------------------------------------------


def _series_derivatives(coeffs: List[int], count: int, prec: int) -> List[_Laurent]:
    out = [_Laurent.from_series(coeffs, prec)]
    for _ in range(count):
        out.append(out[-1].derivative())
    return out


def _check_brackets(components: List[_Laurent], top: _Laurent,
                    a_series: List[_Laurent], k_max: int) -> bool:
    """Brackets of nabla u for u = sum components[j] * nabla^j(generator):
    (C_j' + C_{j-1} - C_top * a_j) for each j; all must vanish."""
    n = len(components)
    for j in range(n - 1, -1, -1):
        bracket = components[j].derivative()
        if j > 0:
            bracket = bracket + components[j - 1]
        bracket = bracket - top * a_series[j]
        if not bracket.is_zero_up_to(k_max):
            return False
    return True


def verify_horizontal_u4(op: ThetaOperator, N: int,
                         _flip_sign: bool = False) -> bool:
    """Check that the twisted section

        u = Y [f0 D^3 - f0' D^2 + f0'' D - f0'''] omega
          + (Y a3 - Y') [f0 D^2 - f0''] omega
          + (Y a2 - (Y a3)' + Y'') [f0 D - f0'] omega

    (D = nabla_{d/dz}, Y'/Y = a3/2) is horizontal: nabla u = 0 through
    series coefficients up to order N - 4.
    """
    if N < 5:
        raise ValueError("need N >= 5 to certify any coefficient")
    mf = to_monic(op)
    a3, a2, a1, a0 = mf.a[3], mf.a[2], mf.a[1], mf.a[0]
    Y = rational_exp_integral(a3 * Fraction(1, 2))
    f0 = solve_series(op, N).coeffs

    prec = N + 1
    lprec = prec + 8  # rational factors are exact; keep some slack
    f = _series_derivatives(f0, 3, prec)
    Ys = _Laurent.from_ratfun(Y, lprec)
    Yp = _Laurent.from_ratfun(Y.derivative(), lprec)
    Ypp = _Laurent.from_ratfun(Y.derivative().derivative(), lprec)
    a3s = _Laurent.from_ratfun(a3, lprec)
    Ya3p = _Laurent.from_ratfun((Y * a3).derivative(), lprec)

    coef2 = Ys * a3s - Yp                       # Y a3 - Y'
    coef1 = _Laurent.from_ratfun(a2, lprec) * Ys - Ya3p + Ypp

    minus = _Laurent(0, [Fraction(-1)], lprec)
    # negative control: flip exactly one sign (the f0' term of C2)
    m2 = _Laurent(0, [Fraction(1)], lprec) if _flip_sign else minus

    C3 = Ys * f[0]
    C2 = m2 * (Ys * f[1]) + coef2 * f[0]
    C1 = Ys * f[2] + coef1 * f[0]
    C0 = minus * (Ys * f[3]) + minus * (coef2 * f[2]) + minus * (coef1 * f[1])

    a_series = [_Laurent.from_ratfun(a, lprec) for a in (a0, a1, a2, a3)]
    return _check_brackets([C0, C1, C2, C3], C3, a_series, N - 4)


def verify_horizontal_u5(q: ThetaOperator, N: int,
                         _zero_b1: bool = False) -> bool:
    """Check horizontality of the order-5 twisted section of the exterior
    square Q: with Y'/Y = (2/5) b4 and C4 = Y F0, the chain

        C_{j} = C4 b_{j+1} - C_{j+1}'   (j = 3..0)

    makes every bracket of nabla u vanish except possibly the last,
    C_0' = C4 b_0, which holds exactly when u is horizontal.  All five
    brackets are checked on series coefficients up to order N - 4.
    """
    if N < 5:
        raise ValueError("need N >= 5 to certify any coefficient")
    mf = to_monic(q)
    b = mf.a  # b0 .. b4
    Y = rational_exp_integral(b[4] * Fraction(2, 5))
    F0 = solve_series(q, N).coeffs

    prec = N + 1
    lprec = prec + 8
    Fs = _Laurent.from_series(F0, prec)
    Ys = _Laurent.from_ratfun(Y, lprec)
    bs = [_Laurent.from_ratfun(bb, lprec) for bb in b]
    if _zero_b1:
        bs[1] = _Laurent(0, [], lprec)

    C = [None] * 5
    C[4] = Ys * Fs
    for j in range(3, -1, -1):
        C[j] = C[4] * bs[j + 1] - C[j + 1].derivative()
    return _check_brackets(C, C[4], bs, N - 4)
