"""Exact quaternionic polynomial algebra and real Nullstellensatz checks for matrix polynomials."""

from .quat import Quaternion, QuatMatrix, QuatSubspace
from .poly import Poly, QPoly
from .ncpoly import NCPoly, phi, rho
from .submod import Submodule, PointedFiber
from .mring import MatPoly, LeftIdeal, ideal_of_rows
from .grammar import ParseError, parse, format_value
from .nss import (Certificate, Step, ZeroPair, ZeroSet, real_closure_bounded, vanishing_module,
                  verify_certificate, check_nullstellensatz_instance)
from .instances import load_instance

__all__ = [
    "Quaternion", "QuatMatrix", "QuatSubspace",
    "Poly", "QPoly", "NCPoly", "phi", "rho",
    "Submodule", "PointedFiber",
    "MatPoly", "LeftIdeal", "ideal_of_rows",
    "ParseError", "parse", "format_value",
    "Certificate", "Step", "ZeroPair", "ZeroSet", "real_closure_bounded", "vanishing_module",
    "verify_certificate", "check_nullstellensatz_instance", "load_instance",
]
