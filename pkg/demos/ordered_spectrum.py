"""Totally ordering the bound levels and watching the order change with epsilon.

Within one well the shifted energies -(a + 2 eps b) are straight lines in
eps, so two levels with different slopes b can trade places as the fractional
part moves.  The single-index mu_0 .. mu_xi labelling therefore depends on
eps, not just on k.
"""

import morsekit as mk

param = mk.decompose(mk.pi_multiple_text(3.0), "irrational")
spectrum = mk.order_spectrum(param)

print(f"p = 3*pi: {len(spectrum.levels)} levels for {param.state_count()} states\n")
print(f"{'mu':>4} {'a':>4} {'b':>3}  {'shifted':>12}  members")
for i in (0, 1, 2, 3, 4, 18, 52, 53, 54):
    rec = spectrum.levels[i]
    members = " ".join(f"({n},{m})" for n, m in rec.members)
    print(f"{i:>4} {rec.key.a:>4} {rec.key.b:>3}  {rec.shifted_energy:>12.6f}  {members}")

# The (3,0)/(0,3) doublet and the (1,1) singlet cross at eps = 1/2.
print("\nOrder flip at k = 3:")
for text in ("3.4", "3.6"):
    spec = mk.order_spectrum(mk.decompose(text, "rational"))
    i_doublet = spec.index_of(3, 0)
    i_singlet = spec.index_of(1, 1)
    first = "(3,0)" if i_doublet < i_singlet else "(1,1)"
    print(f"  p = {text}: mu_{min(i_doublet, i_singlet)} is {first}")

print("\nCrossings within 1e-3 of eps = 0.5 for k = 3:")
for crossing in mk.crossing_report(3, 0.5, tol=1e-3):
    print(
        f"  keys ({crossing.key_i.a},{crossing.key_i.b}) and "
        f"({crossing.key_j.a},{crossing.key_j.b}) cross at eps = {crossing.epsilon_cross}"
    )

# Declaring an exactly half-integer p irrational is contradictory: two keys
# give identical energies and no strict order exists.
try:
    mk.order_spectrum(mk.decompose("3.5", "irrational"))
except mk.OrderingAmbiguityError as exc:
    print(f"\nDeclared-mode contradiction detected:\n  {exc}")
