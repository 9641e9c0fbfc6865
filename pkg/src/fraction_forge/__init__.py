"""fraction-forge: executable calculus-of-fractions machinery.

Finite simplicial sets, marked categories, fraction-condition deciders,
localization via Gabriel-Zisman fractions / colimit formula / a truncated
marked Ex functor, and a discrete homotopy theory toolkit for graphs.
"""

__version__ = "0.1.0"
