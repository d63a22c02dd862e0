"""Hodge spectra of finite simplicial complexes, covering quotients and
twisted group-cohomology cochain complexes."""

from hdx.errors import HDXError
from hdx.simplicial import SimplicialComplex, build_complex, boundary_matrix, coboundary_matrix
from hdx.hodge import CochainComplex, SpectrumReport, spectrum, essential_gap
from hdx.group_ring import GroupRingElement, GroupRingMatrix
from hdx.covers import CosetAction, GammaComplexData, quotient_complex, verify_shapiro
from hdx.family import analyze_member, family_report

__all__ = [
    "HDXError",
    "SimplicialComplex",
    "build_complex",
    "boundary_matrix",
    "coboundary_matrix",
    "CochainComplex",
    "SpectrumReport",
    "spectrum",
    "essential_gap",
    "GroupRingElement",
    "GroupRingMatrix",
    "CosetAction",
    "GammaComplexData",
    "quotient_complex",
    "verify_shapiro",
    "analyze_member",
    "family_report",
]
