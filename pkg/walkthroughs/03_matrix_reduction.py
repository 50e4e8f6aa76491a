"""
Matrix reduction and the bracket on representation coordinates
==============================================================

Send x to a generic 2 x 2 matrix, evaluate Fock elements against matrix
units, and recover the bracket between matrix coordinates x_ij from the
wheeled bracket.
"""

from wheelkit.dpois import DoubleBracketSpec, WheeledBracketEngine, tensor
from wheelkit.fock import fock_word
from wheelkit.freealg import FreeAlgebra
from wheelkit.matred import abelianize, kr_table, rep_matrix, wheeled_eval

A = FreeAlgebra(["x"])
d = 2

print("rep(xx)[1,2] =", rep_matrix(A.monomial(["x", "x"]), d)[1, 2])

# A two-slot element with crossed wiring, evaluated on E_{(2,1),(1,2)}.
u = fock_word(A, "x", "", perm=[2, 1])
print("eval         =", abelianize(wheeled_eval(u, (2, 1), (1, 2), d)))

# A necklace evaluates to a trace.
print("eval pi(xx)  =", abelianize(wheeled_eval(fock_word(A, neck=["xx"]), (), (), d)))

spec = DoubleBracketSpec(A, {("x", "x"): tensor(A, (1, "x", ""), (-1, "", "x"))})
names, table = kr_table(WheeledBracketEngine(spec), d)
for (a, b), val in sorted(table.items()):
    if val != 0:
        print(f"{{{names[a]}, {names[b]}}} = {val}")
