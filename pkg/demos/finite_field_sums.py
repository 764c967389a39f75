"""
Character sums of the discriminant over F_p
===========================================

"""

from coxeter_monodromy import PrimeField, verify_finite
from coxeter_monodromy.finite_field import orbit_sanity
from coxeter_monodromy.invariants import discriminant_in_invariants

# The discriminant of B2 written in the basic invariants y1 = q, y2
pres = discriminant_in_invariants("B2")
print("invariants:", [str(f) for f in pres.invariants])
print("discriminant:", pres.disc)

# Over F_7 every fibre of the quotient map (off the discriminant) is a free orbit
print("free orbits mod 7:", orbit_sanity("B2", 7, pres=pres))

# Sum chi(disc) psi(y1) over F_p^n and compare with the Gauss-sum product
for p in (5, 7, 11):
    report = verify_finite("B2", p, pres=pres)
    worst = max(row.abs_diff for row in report.rows)
    print(f"p = {p:2d}: {report.num_passed}/{len(report.rows)} characters agree, max diff {worst:.1e}")

# One character in detail
f = PrimeField(11)
row = verify_finite("G2", f, chi=3).rows[0]
print(f"G2, p = 11, chi = 3:  S = {row.S:.6f}  RHS = {row.RHS:.6f}")
