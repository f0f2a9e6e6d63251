"""Exact Duistermaat-Heckman densities of toric models.

Submodules: :mod:`~dhtoric.exact` (rational polynomials and sign
certificates), :mod:`~dhtoric.polytope`, :mod:`~dhtoric.pushforward`,
:mod:`~dhtoric.logconcave`, :mod:`~dhtoric.sl2forms`, plus the JSON layer,
gallery and command-line interface.
"""

from dhtoric.exact import Interval, PiecewisePoly, Rational, UniPoly, sign_on_interval
from dhtoric.logconcave import CircleDensity, circle_classify, hamiltonian_decision, logconcave_on_line
from dhtoric.polytope import HRep, VRep, cut, triangulate, vertices_from_hrep, volume
from dhtoric.pushforward import (
    DHFunction,
    FixedComponent,
    ToricModel,
    dh_compute,
    dh_mc_oracle,
    fixed_components,
    gls_jump,
)
from dhtoric.sl2forms import ExteriorForm, omega, primitive_decomposition

__version__ = "0.1.0"

__all__ = [
    "CircleDensity",
    "DHFunction",
    "ExteriorForm",
    "FixedComponent",
    "HRep",
    "Interval",
    "PiecewisePoly",
    "Rational",
    "ToricModel",
    "UniPoly",
    "VRep",
    "circle_classify",
    "cut",
    "dh_compute",
    "dh_mc_oracle",
    "fixed_components",
    "gls_jump",
    "hamiltonian_decision",
    "logconcave_on_line",
    "omega",
    "primitive_decomposition",
    "sign_on_interval",
    "triangulate",
    "vertices_from_hrep",
    "volume",
]
