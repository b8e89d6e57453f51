"""
Weight-four eta products at the split points
============================================

Where the leading symbol vanishes mod p, the quartic degenerates into
(1 - chi p T)(1 - chi p^2 T)(1 - a_p T + p^3 T^2), and the extracted a_p
matches the q-expansion coefficient of a weight-four eta product.  This
script expands the two built-in products from their factor data, then walks
the catalog's split cells at small primes and reports which stored form each
a_p hits — including the cells whose form is absent from the built-in list.
"""

from frobcy.catalog import get_entry
from frobcy.classify import (BUILTIN_FORMS, NoFixture, classify_operator,
                             match_singular_ap)

# the two stored forms, expanded from their (scale, exponent) factors by the
# pentagonal-number recursion
for label, form in BUILTIN_FORMS.items():
    print(f"form {label}: eta factors {form.factors}, weight {form.weight}, "
          f"q-expansion {form.expand(12)[1:]}")

# split cells of A*a (the reduction of -1/16) and B*d (of 1/216)
print()
for name, p in (("A*a", 5), ("A*a", 7), ("B*d", 7)):
    for cell in classify_operator(get_entry(name).operator, p):
        if cell.status != "singular":
            continue
        hit = cell.form if cell.form is not None else "(no stored form)"
        print(f"{name} p={p} z={cell.z0}: chi = {cell.chi:+d}, "
              f"a_{p} = {cell.ap:>4}  ->  {hit}")

# a split whose form is not stored raises a clean lookup error
print()
cell = classify_operator(get_entry("D*c").operator, 5)[1]
print(f"D*c p=5 z=2 splits with a_5 = {cell.ap}, but:")
try:
    match_singular_ap(5, cell.ap)
except NoFixture as exc:
    print("  NoFixture:", exc)
