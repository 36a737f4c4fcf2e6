"""Exact local parity bookkeeping for elliptic curves in dihedral extensions.

Subpackages cover: integral Weierstrass models, reduction types at a prime
(Kodaira symbol, Tamagawa number, conductor exponent), character theory of
the dihedral groups D_{2p^n} in exact cyclotomic arithmetic, regulator
constants as rational square classes, base-change bookkeeping without
re-running reduction over extensions, the two-sided local parity check, and
the semistabilising curve surgery.
"""

__version__ = "0.1.0"

from .characters import DihedralContext, irreducibles, verify_reduction_identity
from .parity import (LocalSetting, enumerate_settings, global_parity,
                     verify_local)
from .regulator import (RationalRep, SquareClass, regulator_constant,
                        t_theta_member)
from .surgery import certify, make_semistable
from .tate import LocalReductionData, local_reduction
from .weierstrass import WeierstrassCurve, invariants, transform

__all__ = [
    "DihedralContext", "LocalReductionData", "LocalSetting", "RationalRep",
    "SquareClass", "WeierstrassCurve", "certify", "enumerate_settings",
    "global_parity", "invariants", "irreducibles", "local_reduction",
    "make_semistable", "regulator_constant", "t_theta_member", "transform",
    "verify_local", "verify_reduction_identity", "__version__",
]
