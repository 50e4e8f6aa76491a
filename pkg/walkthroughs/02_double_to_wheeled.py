"""
From a double bracket to a wheeled Poisson bracket
==================================================

Start from the double bracket <<x, x>> = x (x) 1 - 1 (x) x on k<x>, check
the double Jacobi identity, and then look at the induced bracket on Fock
elements together with a bounded run of its Poisson axioms.
"""

from wheelkit.dpois import (DoubleBracketSpec, WheeledBracketEngine, check_double_jacobi,
                            check_poisson_axioms, tensor)
from wheelkit.fock import fock_word
from wheelkit.freealg import FreeAlgebra

A = FreeAlgebra(["x"])
spec = DoubleBracketSpec(A, {("x", "x"): tensor(A, (1, "x", ""), (-1, "", "x"))})

rep = check_double_jacobi(spec, 3)
print("double Jacobi:", rep.status, f"({rep.cases} triples)")

# A perturbed table is a useful control: its Jacobiator does not vanish.
bad = DoubleBracketSpec(A, {("x", "x"): tensor(A, (1, "xx", ""), (-1, "", "xx"))})
print("control     :", check_double_jacobi(bad, 3).status)

engine = WheeledBracketEngine(spec)
x = fock_word(A, "x")
necklace_x = fock_word(A, neck=["x"])
print("{x, x}      =", engine(x, x))
print("{x, pi(x)}  =", engine(x, necklace_x))
print("{pi(x), pi(x)} =", engine(necklace_x, necklace_x))

# Small bounds keep this quick; the acceptance suite runs the full bounds.
rep = check_poisson_axioms(engine, max_arity=1, max_total=2, max_word_len=2)
print("axioms:", {k: v["status"] for k, v in rep.details.items()}, f"({rep.cases} cases)")
