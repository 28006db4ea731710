"""Noncommutative polynomials over Q: factorization, centralizers, eigenlevel sets, quasiconvexity."""

from .decide import (
    bertini_report,
    centralizer_slice,
    composite_decompose,
    intertwiner_space,
    stable_association,
)
from .eigenlevel import (
    EigenlevelCertificate,
    MatrixTuple,
    char_poly,
    det_profile_equal,
    eig_cert,
    eig_equiv,
    eig_member,
    evaluate,
)
from .errors import BudgetExceeded, NoAffineMatch, NotEquivalent, NotIncluded, ParseError
from .factor import factor, is_irreducible, power_decompose_homogeneous
from .ncpoly import NCPoly, ParamNCPoly, compose_uni
from .parser import parse
from .quasiconvex import build_lmi, concave_quad_decompose, wqc_classify
from .unipoly import UniPoly

__version__ = "0.1.0"
