"""
Chambers and Euler characteristics of reflection arrangements
=============================================================

"""

import random

from coxeter_monodromy.arrangements import (
    chamber_count_deletion_restriction,
    chamber_count_zaslavsky,
    coxeter_arrangement,
    coxeter_euler_checks,
    intersection_poset,
    random_arrangement,
)

# Characteristic polynomial of the B3 arrangement from its intersection poset
a, gram = coxeter_arrangement("B3")
print("B3 characteristic polynomial (ascending):", intersection_poset(a).characteristic_polynomial())

# Chambers by Zaslavsky and by deletion-restriction
for name in ["A3", "B3", "D4", "F4"]:
    a, _ = coxeter_arrangement(name)
    print(f"{name}: {chamber_count_zaslavsky(a)} = {chamber_count_deletion_restriction(a)} chambers")

# The same two counts on a random arrangement
rng = random.Random(1)
a = random_arrangement(rng, 3, 5)
print("random forms", a.forms, "->", chamber_count_zaslavsky(a), "chambers")

# Euler characteristic of the quadric minus the arrangement, against |G|
for name in ["A2", "B2", "G2", "A3", "B3"]:
    r = coxeter_euler_checks(name)
    print(f"{name}: chi = {r.euler_B}, |G| = {r.group_order}, ok = {r.passed}")
