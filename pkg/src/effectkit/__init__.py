"""Effect algebras over exact rationals: finite partial-addition tables
and symbolic intervals of po-groups, with ideal theory, state spaces,
and lexicographic-product representations."""

__version__ = "0.1.0"
