"""Exception types raised across the synthesizer."""


class VlcmError(Exception):
    pass


class EmptyInput(VlcmError, ValueError):
    pass


class InvalidDigit(VlcmError, ValueError):
    def __init__(self, position, char=None):
        self.position = position
        self.char = char
        super().__init__(f"invalid hex digit {char!r} at position {position}")


class ZeroConstant(VlcmError, ValueError):
    pass


class InvalidP(VlcmError, ValueError):
    pass


class NonPositiveResult(VlcmError, ValueError):
    pass


class UnknownOperand(VlcmError, KeyError):
    pass


class BudgetExceeded(VlcmError, RuntimeError):
    def __init__(self, states_explored):
        self.states_explored = states_explored
        super().__init__(f"search budget exhausted after {states_explored} states")


class InfeasibleDelay(VlcmError, ValueError):
    pass


class UnresolvedTerm(VlcmError, KeyError):
    pass


class InvalidIdentifier(VlcmError, ValueError):
    pass


class VerificationError(VlcmError, AssertionError):
    pass
