"""Distinction of representations of GL_n by sigma-invariant subgroups.

Finite-field engine (fields, characters, GL_n classes, exact character tables,
distinction multiplicities) and a symbolic decision procedure for p-adic
sigma-selfdual supercuspidals.
"""

__version__ = "0.1.0"
