"""
Products and exponentials of supported actions
==============================================

"""

from lrmkit import (
    box_product,
    check_action,
    curry,
    enumerate_homs,
    exponential,
    principal_action,
    projection_action,
    pt,
    uncurry,
)

S = pt(2)
T = projection_action(S)
A = principal_action(S, S.identity)
print("terminal action size:", T.size, " principal action size:", A.size)

# the box product pairs points with equal support
P = box_product(A, T)
print("A x T size:", P.size, check_action(P).ok)

# exponentials: maps out of a product correspond to maps into B^A
E = exponential(T, A)
print("A^T size:", E.action.size, check_action(E.action).ok)

homs = enumerate_homs(box_product(A, T), A)
print("homs A x T -> A:", len(homs))
for g in homs:
    h = curry(E, A, g)
    assert uncurry(E, A, h) == tuple(g)
print("curry and uncurry are mutually inverse on these maps")
