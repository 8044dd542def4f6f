"""Exception hierarchy shared by every module."""


class TocqError(Exception):
    """Base class for all library errors."""


class GateError(TocqError):
    """Input gate or file could not be accepted."""


class NotHermitian(GateError):
    pass


class NotUnitary(GateError):
    pass


class NotSpecial(GateError):
    pass


class UnknownGate(GateError):
    pass


class FormatError(GateError):
    """A matrix, factorization or schedule file is malformed."""


class NumericalError(TocqError):
    """A numerical stage produced an inconsistent result."""


class NumericalInconsistency(NumericalError):
    pass


class RootsOutOfRange(NumericalError):
    pass


class ComplexRoots(NumericalError):
    pass


class AmbiguousClass(NumericalError):
    pass


class InvalidInvariants(NumericalError):
    pass


class DegenerateSpectrum(NumericalError):
    pass


class ReconstructionFailed(NumericalError):
    pass


class MoveSetExhausted(NumericalError):
    pass


class SynthesisFailed(NumericalError):
    pass


class NoCandidateMatches(NumericalError):
    pass
