"""
Ideals, residue rings and the groups PSL(2, O/I)
================================================

Walk through one level in detail: the ideal <1+3*sqrt-2> of O_2.
"""

from bianchi_cls.modmat import build_group, brute_force_psl2_order, cusp_count, psl2_order
from bianchi_cls.quadint import class_number, factor_ideal, parse_element, parse_ideal, principal

# elements use the basis (1, w); for d = 2, w = sqrt-2
x = parse_element(2, "1+3*w")
print("x =", x, " norm", x.norm())

# ideals are stored by their lower Hermite normal form in (1, w) coordinates
I = principal(x)
print("HNF rows:", I.basis)
print("factorization:", [(str(P), e) for P, e in factor_ideal(I)])

# order formula vs. two independent counts
print("formula    ", psl2_order(I))
print("det count  ", brute_force_psl2_order(I))
print("closure    ", build_group(I).order())

# one of the eight rows of the reference table
J = parse_ideal(7, "(1+3*sqrt-7)/2")
print("d=7:", J, "norm", J.norm(), "order", psl2_order(J), "cusps", cusp_count(7, J))

# class numbers of the fields that matter
for d in (1, 2, 3, 5, 6, 7, 11, 15, 19, 23, 31, 39, 47, 71):
    print(d, class_number(d), end="; ")
print()
