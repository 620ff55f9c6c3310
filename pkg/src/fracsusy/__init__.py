"""fracsusy: exact kernel for fractional extensions of Lie algebras.

Constructs Z_n-graded extensions U_n^N(g) of a Lie algebra g, solves the
consistency conditions on their symmetric structure constants, checks the
induced Hopf structure, the dual (group) side with its pairing, and
differential-operator realizations on a truncated superspace.  All kernel
arithmetic is exact (rationals extended by a primitive n-th root of unity
and sqrt 2).
"""

__version__ = "0.1.0"

from .scalar import (CyclotomicConfig, Scalar, get_config, parse_scalar,
                     q_int, q_pochhammer)

__all__ = [
    "CyclotomicConfig", "Scalar", "get_config", "parse_scalar",
    "q_int", "q_pochhammer", "__version__",
]
