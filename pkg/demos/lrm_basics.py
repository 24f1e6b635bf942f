"""
Partial maps as a left restriction monoid
=========================================

"""

# pt(2): all partial maps on {0, 1}, composed left to right
from lrmkit import check_boolean_lrm, check_lrm, pt
from lrmkit.restriction import natural_leq

S = pt(2)
print("elements:", [S.label(a) for a in range(S.size)])

# plus sends a map to the identity on its domain
for a in range(S.size):
    print(f"  {S.label(a)}+ = {S.label(S.plus[a])}")

# the exhaustive axiom scans report every law and any counterexample
print(check_lrm(S).summary().splitlines()[0])
print(check_boolean_lrm(S).summary().splitlines()[0])

# the natural order is restriction of partial maps
f, g = S.index_of((0, None)), S.index_of((0, 1))
print("(0,None) <= (0,1):", natural_leq(S, f, g))
print("(0,1) <= (0,None):", natural_leq(S, g, f))
