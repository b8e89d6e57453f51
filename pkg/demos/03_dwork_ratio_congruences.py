"""
Ratio congruences that make truncation honest
=============================================

The unit-root pipeline evaluates infinite power series through finite
truncations.  That is justified by congruences between a solution's
coefficients: c(n) / c(floor(n/p)) is stable mod p^s along the base-p
expansion of n.  This script checks them for one catalog sequence, then
corrupts a single coefficient and watches the check locate it.
"""

from frobcy.catalog import sequence_terms, sequence_terms_via_recurrence
from frobcy.congruence import check_dwork_congruence

# the sequence named "c": terms by running the operator recurrence, and
# independently by the closed-form binomial sum
N = 400
coeffs = sequence_terms_via_recurrence("c", N)
assert coeffs == sequence_terms("c", N)
print("sequence c, first terms:", coeffs[:6])

# the congruence sweep for three primes and powers s = 1, 2, 3
for p in (3, 5, 7):
    for s in (1, 2, 3):
        report = check_dwork_congruence(coeffs, p, s, N)
        print(f"p = {p}, s = {s}: {report.summary()}")

# corrupt one coefficient: the sweep fails and names the first witness
bad = list(coeffs)
bad[35] += 1
report = check_dwork_congruence(bad, 7, 1, N)
n, got, want = report.failures[0]
print(f"\nafter corrupting c[35]: ok = {report.ok}; first counterexample at "
      f"n = {n}: got {got}, expected {want} (mod 7)")
