"""Exception hierarchy. Every error carries a stable ``code`` string."""


class LatticeError(Exception):
    code = "E_LATTICE"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(LatticeError):
    code = "E_PARSE"


class DuplicateLabelError(ParseError):
    code = "E_DUP_LABEL"


class UnknownLabelError(ParseError, KeyError):
    code = "E_UNKNOWN_LABEL"

    def __str__(self):
        return Exception.__str__(self)


class WeightRangeError(ParseError):
    code = "E_WEIGHT_RANGE"


class EmptyLatticeError(LatticeError):
    code = "E_EMPTY"


class NotAntisymmetricError(LatticeError):
    """The relation contains a cycle; ``witness`` lists the labels on it."""

    code = "E_NOT_ANTISYMMETRIC"


class NotLatticeError(LatticeError):
    """Some pair lacks a meet or a join; ``witness`` is that pair."""

    code = "E_NOT_LATTICE"


class TooLargeError(LatticeError):
    code = "E_TOO_LARGE"


class ParamRangeError(LatticeError, ValueError):
    code = "E_PARAM_RANGE"


class UnknownNameError(LatticeError, ValueError):
    code = "E_UNKNOWN_NAME"


class NotSquareError(LatticeError, ValueError):
    code = "E_NOT_SQUARE"


class NegativeEntryError(LatticeError, ValueError):
    code = "E_NEGATIVE_ENTRY"


class NoConvergenceError(LatticeError, ArithmeticError):
    code = "E_NO_CONVERGENCE"
