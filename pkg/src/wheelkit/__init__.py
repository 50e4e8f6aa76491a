"""Exact computer algebra for wheelspaces, Fock wheelgebras and wheeled Poisson brackets."""

__version__ = "0.1.0"
