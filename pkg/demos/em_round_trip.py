"""
From actions to [E|M]-sets and back
===================================

"""

from lrmkit import check_em_set, from_action, principal_action, pt, roundtrip_action_iso, to_action

S = pt(2)
A = principal_action(S.boolean, S.identity)

# keep the points of full support; projections become equivalence relations
Y = from_action(A)
print(f"action size {A.size}, [E|M]-set size {Y.size}")
print(check_em_set(Y).summary().splitlines()[0])

# rebuild the action from the [E|M]-set
X = to_action(Y, S)
print("rebuilt action size:", X.size)

R = roundtrip_action_iso(A)
print("round trip isomorphism:", R.theta)
