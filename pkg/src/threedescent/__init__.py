"""Exact 3-descent on elliptic curves over Q.

Turns an explicit 3-Selmer element (a number-field element alpha) into a
plane cubic via the obstruction algebra, maximal orders and LLL, and the
Segre-embedding projection.  Everything user-visible is exact rational
arithmetic; floating point only enters through certified complex
embeddings used for lattice reconstruction and Gram matrices.
"""

__version__ = "0.1.0"
