"""
One Frobenius quartic, step by step
===================================

Walk the whole unit-root pipeline for the operator A*a at p = 7 and the
parameter z = 2, printing every intermediate value: the two truncated power
series, the Teichmüller lift, the four series evaluations, the two unit
roots, and the assembled quartic 1 + aT + bpT^2 + ap^3T^3 + p^6T^4.
"""

from frobcy.catalog import get_entry
from frobcy.diffop import solve_series
from frobcy.frobenius import (assemble_frobenius, frobenius_quartic,
                              unit_roots, weil_verify)
from frobcy.padic import teichmueller_residue
from frobcy.wedge import wedge_square

p, z0, s = 7, 2, 4
mod = p**s
print(f"operator A*a, p = {p}, z = {z0}, working modulo {p}^{s} = {mod}")

# the fourth-order operator P and its exterior square Q; the unit roots come
# from the holomorphic solutions f0 of P and F0 of Q
op = get_entry("A*a").operator
q = wedge_square(op)
f0 = solve_series(op, p**s - 1, p=p, K=s)
F0 = solve_series(q, p**s - 1, p=p, K=s)
print("f0 head:", f0.coeffs[:5])
print("F0 head:", F0.coeffs[:5])

# z is lifted to the Teichmüller representative: the unique root of unity in
# the p-adics reducing to z0 mod p
zhat = teichmueller_residue(z0, p, mod)
print(f"Teichmüller lift of {z0}: {zhat}  (check: zhat^{p} == zhat mod {mod}:",
      pow(zhat, p, mod) == zhat, ")")

# each unit root is a ratio of the series at zhat and at zhat^p, the
# denominator truncated one level lower
top = f0.evaluate_mod(zhat, mod)
bot = f0.truncate(p ** (s - 1) - 1).evaluate_mod(pow(zhat, p, mod), mod)
print(f"f0(zhat) = {top},  f0^(lower)(zhat^p) = {bot},  "
      f"ratio = {top * pow(bot, -1, mod) % mod}")

Top = F0.evaluate_mod(zhat, mod)
Bot = F0.truncate(p ** (s - 1) - 1).evaluate_mod(pow(zhat, p, mod), mod)
print(f"F0(zhat) = {Top},  F0^(lower)(zhat^p) = {Bot},  "
      f"ratio = {Top * pow(Bot, -1, mod) % mod}")

# the library computes the same two ratios with certified precision
r1, rhat = unit_roots(f0, F0, z0, p, s)
print(f"unit roots: r1 = {r1.residue}, rhat = {rhat.residue}  "
      f"(each certified to {r1.guaranteed} digits)")

# balanced lifts under the archimedean bounds |a| <= 4p^(3/2), |b| <= 6p^2
# turn the two p-adic roots into the integer coefficients (a, b)
a, b = assemble_frobenius(r1, rhat, p, at_singular_fiber=False)
print(f"(a, b) = ({a}, {b})")

quartic = frobenius_quartic(a, b, p)
print("P(T) coefficients [T^0 .. T^4]:", quartic)
print("all reciprocal roots on |T| = p^(-3/2):", weil_verify(a, b, p))
