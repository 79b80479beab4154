"""Average running time analysis for naive propositional-logic algorithms.

Exact-rational expected running times over weighted sentence spaces,
with enumeration-backed verification of linear, cubic, and moment
bounds for brute-force satisfiability testing and truth-table
tabulation.
"""

__version__ = "0.1.0"
