"""fgl-forge: exact computer algebra for formal group laws, Landweber
exactness checking, and the explicit operation rings of algebraic K-theory.
"""

__version__ = "0.1.0"
