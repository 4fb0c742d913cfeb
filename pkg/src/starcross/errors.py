"""Exception hierarchy shared across the workbench."""


class StarcrossError(Exception):
    """Base class for every error raised by this package."""


# -- group tables ------------------------------------------------------------

class GroupTableError(StarcrossError):
    pass


class NonAssociativeTable(GroupTableError):
    pass


class NoIdentity(GroupTableError):
    pass


class NoInverse(GroupTableError):
    pass


class NotASubgroup(StarcrossError):
    pass


class NotNormal(StarcrossError):
    pass


# -- algebras ----------------------------------------------------------------

class DimensionOverflow(StarcrossError):
    pass


class NotSelfAdjoint(StarcrossError):
    pass


class NotStarHom(StarcrossError):
    pass


class NotInAlgebra(StarcrossError):
    pass


# -- dynamics ----------------------------------------------------------------

class ActionMismatch(StarcrossError):
    pass


class NotCovariant(StarcrossError):
    pass


class NotAnAction(StarcrossError):
    pass


# -- coactions ---------------------------------------------------------------

class CoactionCertificationError(StarcrossError):
    pass


class CoactionIdentityFails(CoactionCertificationError):
    pass


class NotNondegenerate(CoactionCertificationError):
    pass


class CocycleIdentityFails(StarcrossError):
    pass


class IsoSearchFailed(StarcrossError):
    pass


# -- Hilbert bimodules -------------------------------------------------------

class MiddleAlgebraMismatch(StarcrossError):
    pass


class NotImprimitivity(StarcrossError):
    pass


class HomAxiomFails(StarcrossError):
    pass


class KernelMismatch(StarcrossError):
    pass


# -- theorem verifications ---------------------------------------------------

class ConditionFails(StarcrossError):
    """A displayed verification chain failed; carries the failing tag."""

    def __init__(self, tag: str, residual: float, message: str = ""):
        self.tag = tag
        self.residual = residual
        super().__init__(message or f"condition {tag} failed with residual {residual:.3e}")


class ConditionsFail(StarcrossError):
    pass


class NoIntertwinerFound(StarcrossError):
    pass


class NaturalityFails(StarcrossError):
    pass


# -- CLI ---------------------------------------------------------------------

class ParseError(StarcrossError):
    pass


class UnknownJob(StarcrossError):
    pass
