"""
Exterior squares and the self-duality identities
================================================

Every fourth-order operator in the catalog is self-dual, and its exterior
square — the fifth-order operator annihilating the z-scaled Wronskians of
solution pairs — is anti-self-adjoint after conjugation.  Both facts are
exact rational-function identities, and both have a series-level companion:
a twisted section built from the holomorphic solution is horizontal for the
Gauss-Manin connection.  This script verifies all of it for one operator
and shows that a deliberately broken section fails.
"""

from frobcy.catalog import get_entry
from frobcy.diffop import check_cy4, check_cy5, solve_series
from frobcy.wedge import (f0_wedge_via_wronskian, verify_horizontal_u4,
                          verify_horizontal_u5, wedge_square)

op = get_entry("A*a").operator
q = wedge_square(op)
print("operator  :", op.name, f"(order {op.theta_order})")
print("ext square:", f"order {q.theta_order}, z-degree {q.z_degree}")

# the exterior square annihilates the Wronskian series: its holomorphic
# solution equals the z-Wronskian combination of the original solutions
F0 = solve_series(q, 8)
W = f0_wedge_via_wronskian(op, 8)
print("F0 head        :", F0.coeffs[:5])
print("Wronskian head :", W[:5])
assert F0.coeffs == list(W)

# the order-4 and order-5 self-duality identities, exact over the rationals
print("order-4 identity on P:", check_cy4(op))
print("order-5 identity on Q:", check_cy5(q))

# horizontal sections, checked on series coefficients through order 40;
# flipping one sign (or zeroing one bracket) must break them
print("u4 horizontal        :", verify_horizontal_u4(op, 40))
print("u4 sign-flipped      :", verify_horizontal_u4(op, 40, _flip_sign=True))
print("u5 horizontal        :", verify_horizontal_u5(q, 40))
print("u5 bracket zeroed    :", verify_horizontal_u5(q, 40, _zero_b1=True))
