"""Exception hierarchy shared by every module."""


class KocaError(Exception):
    """Base class for all errors raised by kocalab."""


class StructuralError(KocaError):
    """Malformed input: wrong table dimensions, unknown names, bad trees."""


class ContractError(KocaError):
    """An argument violates a documented precondition."""


class ResourceError(KocaError):
    """An enumeration would exceed its configured bound."""


class EvaluationError(KocaError):
    """A term cannot be evaluated (free variable or foreign constant)."""


class ProperQuadrupleError(KocaError):
    def __init__(self, clause, witness=None):
        self.clause = clause
        self.witness = witness
        msg = f"quadruple is not proper: {clause}"
        if witness is not None:
            msg += f" (witness: {witness})"
        super().__init__(msg)


class ParseError(KocaError):
    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)


class KindError(ParseError):
    """Ill-kinded higher-order expression."""


class DerivationError(KocaError):
    def __init__(self, message, node=None):
        self.node = node
        super().__init__(message)
