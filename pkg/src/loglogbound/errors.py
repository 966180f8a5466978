"""Exception hierarchy shared by the certificate chain."""


class CertificateError(Exception):
    """Base class for every failure that prevents a certificate from being issued."""


class MajorantDomainError(CertificateError, ValueError):
    """Argument outside the open interval (0, H) or invalid family parameter."""


class NonSummableTail(CertificateError):
    """The dyadic distribution sum has no finite closed-form tail."""


class LevinsonConditionFails(CertificateError):
    """The log-log integral of the majorant diverges."""


class NoCertificate(CertificateError):
    """The Domar condition cannot be met for any representable constant."""


class GeometryError(CertificateError, ValueError):
    """A ball or sub-cylinder does not fit inside the sampled region."""


class PreconditionError(CertificateError, ValueError):
    """An operation was called outside its documented precondition."""


class QuadratureConfigError(CertificateError, ValueError):
    """Quadrature order too low for the requested tolerance."""


class MajorantParseError(ValueError):
    """Malformed majorant text specification."""
