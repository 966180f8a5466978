"""Certified sup bounds for harmonic functions on cylinders under a log-log majorant condition."""

__version__ = "0.1.0"

from .domar import (
    DomarCertificate,
    EscapeTrace,
    TruncationPolicy,
    certify_bound_2d,
    domar_escape_trace,
    domar_sum,
    minimal_constant,
    subharmonic_mean_check,
)
from .errors import (
    CertificateError,
    GeometryError,
    LevinsonConditionFails,
    MajorantDomainError,
    MajorantParseError,
    NoCertificate,
    NonSummableTail,
    PreconditionError,
    QuadratureConfigError,
)
from .grid import SampledField
from .majorant import (
    Constant,
    Derived,
    DistributionQuery,
    DoubleExpBlowup,
    ExpBlowup,
    Majorant,
    Scaled,
    Tabulated,
    derived_majorant,
    distribution,
    loglog_integral,
    parse_majorant,
    tail_envelope,
)
from .pipeline import BoundCertificate, CylinderSpec, bound_on_axis, certify_bound, replay

__all__ = [name for name in dir() if not name.startswith("_")]
