"""
Quotients by peripheral subgroups
=================================

For h_d = 1 the group PSL(2, O_d) / N_d(I) is presented by adding the two
peripheral translations t^p u^q to the Bianchi relators.  Comparing its order
with |PSL(2, O_d/I)| decides whether Gamma(I) is generated by parabolics.
"""

from bianchi_cls.bianchi import parabolic_generation_test, peripheral_words, presentation_of, quotient_presentation
from bianchi_cls.fpgroup import Limits, abelianization, todd_coxeter
from bianchi_cls.quadint import parse_ideal

bp = presentation_of(2)
print(bp.presentation)

I = parse_ideal(2, "1+2*sqrt-2")
per = peripheral_words(2, I)
print("peripheral words:", [bp.presentation.format_word(w) for w in per.words])

G = quotient_presentation(2, I)
table = todd_coxeter(G)
print("|G| =", table.index)
print(parabolic_generation_test(2, I).verdict)

# the level <2+2*sqrt-2>: the quotient is bigger than PSL(2, O/I)
res = parabolic_generation_test(2, parse_ideal(2, "2+2*sqrt-2"), Limits(100_000, 60))
print(res.verdict, res.evidence)

# the last open case: enumeration does not finish and the abelianization is trivial
F = quotient_presentation(2, parse_ideal(2, "1+3*sqrt-2"))
print("G^ab =", abelianization(F))
res = parabolic_generation_test(2, parse_ideal(2, "1+3*sqrt-2"), Limits(50_000, 30), low_index=6)
print(res.verdict)
for line in res.evidence:
    print("  ", line)
