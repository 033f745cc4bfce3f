"""How the declared arithmetic type of p reshapes the degeneracy pattern.

The quadratic spectrum E ~ -[(p-n)^2 + (p-m)^2] always has the n <-> m swap
symmetry, but any further coincidence depends on whether the fractional part
of p is zero, a ratio of small integers, or irrational.  This script runs the
same well through all three declarations and prints the census each time.
"""

from fractions import Fraction

import morsekit as mk


def show(title, param):
    levels = mk.enumerate_levels(param)
    census = mk.count_summary(levels)
    print(f"\n{title}")
    print(f"  p = {param.p_text} (k = {param.k}, epsilon = {param.epsilon})")
    print(
        f"  states={census.total_states}  swap-reduced={census.swap_reduced}  "
        f"distinct={census.distinct}  accidental={census.accidental}"
    )
    for rec in levels:
        if rec.classification == "accidental":
            members = " ".join(f"({n},{m})" for n, m in rec.members)
            print(f"    merged level a={rec.key.a} b={rec.key.b}: {members}")


# A deep integer well.  75 unordered pairs get absorbed by
# sum-of-two-squares coincidences such as 7^2 + 1^2 = 5^2 + 5^2.
show("k = 28, integer p", mk.decompose("28", "integer"))

# A smaller integer well where every merged level fits on screen.
show("k = 9, integer p", mk.decompose("9", "integer"))

# The same k with an irrational fractional part: all coincidences except the
# swap dissolve, leaving the maximal count (k+1)(k+2)/2 = 55.
show("k = 9, irrational p", mk.decompose(mk.pi_multiple_text(3.0), "irrational"))

# A rational fractional part sits in between: a + 2*(r/q)*b can still collide.
show("k = 7, epsilon = 1/2", mk.decompose("7.5", "rational", ratio=Fraction(1, 2)))

print("\nLevel-count identity: distinct levels for irrational p equal (k+1)(k+2)/2")
for k in (1, 5, 12, 28):
    param = mk.decompose(f"{k}.4142135623730950488", "irrational")
    census = mk.count_summary(mk.enumerate_levels(param))
    print(f"  k={k:>2}: {census.distinct} == {(k + 1) * (k + 2) // 2}")
