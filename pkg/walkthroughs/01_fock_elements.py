"""
Fock elements, products and contractions
========================================

Build a few basis elements of the Fock wheelgebra over k<x, y>, multiply
them, and close slots with contractions. Each contraction is computed
twice: through the cycle construction and through the closed form.
"""

from wheelkit.fock import fock_contract, fock_contract_direct, fock_mul, fock_word
from wheelkit.freealg import FreeAlgebra

A = FreeAlgebra(["x", "y"])

# Two slots carrying x and y, wired by the transposition, with a necklace xy.
u = fock_word(A, "x", "y", neck=["xy"], perm=[2, 1])
print("u        =", u)

# The product juxtaposes slots, takes the ordered sum of the permutations
# and multiplies necklaces.
v = fock_word(A, "x")
print("u * v    =", fock_mul(u, v))

# Contract output j into input i. Depending on the wiring a slot either
# merges into another slot or closes into a new necklace.
for i in (1, 2):
    for j in (1, 2):
        a = fock_contract(2, i, j, u)
        b = fock_contract_direct(2, i, j, u)
        print(f"t_{j},{i}(u) = {a}   (closed form agrees: {a == b})")
