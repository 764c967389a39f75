"""
Monodromy zeta functions of Coxeter discriminants
=================================================

"""

from coxeter_monodromy import local_class_M, global_class_at_0, zeta_of_class
from coxeter_monodromy.recursion import brieskorn_oracle, check_deg, connected_subgraphs

# The local class at the origin, for a few diagrams, as a zeta function
for name in ["A2", "B2", "G2", "A3", "H3", "F4"]:
    print(f"{name:4s} Z = {zeta_of_class(local_class_M(name)).to_text()}")

# In rank two the discriminant is a Brieskorn curve u^m = v^2
for m in range(3, 9):
    same = zeta_of_class(local_class_M(f"I2({m})")) == zeta_of_class(brieskorn_oracle(m, 2))
    print(f"I2({m}) agrees with x^{m} + y^2: {same}")

# The recursion runs over connected subdiagrams; D4 has a few of them
print("D4 connected subdiagrams:", [t.name for _, t in connected_subgraphs("D4")])

# Alternating sum over subdiagrams collapses to the degrees
print("D4 re-summation holds:", check_deg("D4").holds)
print("global class at 0 for A3:", global_class_at_0("A3"))
