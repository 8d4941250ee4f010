"""Exception hierarchy.

Input problems derive from :class:`InvalidInput`; failed preconditions of a
lemma or theorem check derive from :class:`PreconditionFailed`; anything that
means two independent computations disagreed is an
:class:`InternalConsistencyError` and should never be caught and ignored.
"""


class LatticeError(Exception):
    pass


class InvalidInput(LatticeError):
    pass


class DuplicateElement(InvalidInput):
    pass


class UnknownElement(InvalidInput, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class CycleDetected(InvalidInput):
    pass


class RedundantCover(InvalidInput):
    pass


class NotALattice(InvalidInput):
    pass


class NotDistributive(InvalidInput):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SizeLimitExceeded(LatticeError):
    pass


class PreconditionFailed(LatticeError):
    pass


class NoUniqueMinimum(PreconditionFailed):
    pass


class NotSquare(PreconditionFailed):
    pass


class NotMaximalJoinIrreducible(PreconditionFailed):
    pass


class NoUniquePredecessor(PreconditionFailed):
    pass


class InternalConsistencyError(LatticeError):
    pass


class RankExceedsCodim(InternalConsistencyError):
    pass


class RankMismatch(InternalConsistencyError):
    pass


class OracleDisagreement(InternalConsistencyError):
    pass


class CriterionMismatch(InternalConsistencyError):
    pass
