"""
Extending actions from partial units
====================================

"""

from lrmkit import (
    extend_action,
    inverse_view,
    is_etale,
    partial_units,
    projection_action,
    pt,
    restrict_action,
)
from lrmkit.etale import non_etale_example

S = pt(2)

# partial units are the partial injections
U = partial_units(S)
print("partial units:", [S.label(a) for a in U.elements])

# every element is a join of partial units
r = is_etale(S)
print("etale:", r.ok)
for a, parts in r.decompositions.items():
    print(f"  {S.label(a)} = join of {[S.label(u) for u in parts]}")

# an action is determined by how the partial units act
A = projection_action(S.boolean)
B = restrict_action(A, inverse_view(S))
print("extension recovers the action:", extend_action(B, S.boolean) == A)

# without enough units the extension is refused
bad = non_etale_example()
print("non-etale example etale:", is_etale(bad).ok, "witness", is_etale(bad).witness)
