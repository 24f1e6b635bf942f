"""
Rebuilding pt(3) from its projections and total maps
====================================================

"""

from lrmkit import build_lrm, check_lrm, check_pair, from_lrm, pt, reconstruction_iso

S = pt(3)

# split S into the Boolean algebra of projections acting on the total maps
P = from_lrm(S)
print(f"projections: {P.E.size}, total maps: {P.M.size}")
print(check_pair(P).summary().splitlines()[0])

# glue the pair back together and compare with the original
T = build_lrm(P)
print(f"rebuilt size: {T.size}")
print(check_lrm(T).summary().splitlines()[0])

R = reconstruction_iso(S)
print("isomorphism is a bijection:", sorted(R.theta) == list(range(S.size)))
