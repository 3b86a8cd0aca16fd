"""Exception hierarchy. The three families map onto the CLI exit codes 1, 2 and 3."""


class UlrichError(Exception):
    exit_code = 1


class InputError(UlrichError):
    exit_code = 1


class MathematicalFailure(UlrichError):
    exit_code = 2


class BudgetExhausted(UlrichError):
    exit_code = 3


#################

class PolyParseError(InputError):
    pass


class VarSpecMismatch(InputError):
    pass


class DegreeError(InputError):
    pass


class ArityError(InputError):
    pass


class SizeMismatch(InputError):
    pass


class NonLinearEntry(InputError):
    def __init__(self, message, entry=None):
        super().__init__(message)
        self.entry = entry


class SchemaError(InputError):
    pass


class UnverifiedInput(InputError):
    pass


#################

class VerificationError(MathematicalFailure):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotExpressible(MathematicalFailure):
    pass


class CommonComponentError(MathematicalFailure):
    pass


class EliminationDegenerate(MathematicalFailure):
    pass


class NonFiniteMap(MathematicalFailure):
    pass


class ChainBreak(MathematicalFailure):
    def __init__(self, message, prime=None):
        super().__init__(message)
        self.prime = prime


#################

class DecompositionBudgetExhausted(BudgetExhausted):
    def __init__(self, message, attempts=0):
        super().__init__(message)
        self.attempts = attempts
