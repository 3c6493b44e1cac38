"""Exception hierarchy.

Every error carries an ``exit_code`` class used by the CLI:
1 for usage/syntax problems, 2 for violated mathematical preconditions,
3 for anything internal.
"""


class CoHiggsError(Exception):
    exit_code = 3


class UsageError(CoHiggsError):
    exit_code = 1


class DocumentSyntaxError(UsageError):
    def __init__(self, line, msg=""):
        self.line = line
        super().__init__(f"syntax error at line {line}: {msg}" if msg else f"syntax error at line {line}")


class SchemaError(UsageError):
    def __init__(self, path, msg=""):
        self.path = path
        super().__init__(f"schema error at {path}: {msg}" if msg else f"schema error at {path}")


class ValidationError(CoHiggsError):
    exit_code = 2


class EmptyProfile(ValidationError):
    def __init__(self):
        super().__init__("HN profile has no blocks")


class InvalidRank(ValidationError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"block {index} has rank < 1")


class NonDecreasingSlopes(ValidationError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"slope {index} is not strictly larger than slope {index + 1}")


class NonIntegralSlopeGenusZero(ValidationError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"slope {index} is not an integer, but every bundle on P1 splits")


class GammaNonNegative(ValidationError):
    def __init__(self, gamma):
        self.gamma = gamma
        super().__init__(f"degree of the log tangent bundle must be negative, got {gamma}")


class NecessaryConditionFails(ValidationError):
    def __init__(self):
        super().__init__("mu_min > mu_max + gamma: every co-Higgs field with this profile is zero")


class ProfileTooShort(ValidationError):
    def __init__(self, s, needed=2):
        super().__init__(f"profile has length {s}, need at least {needed}")


class OrderViolation(ValidationError):
    pass


class NotCompleteFiltration(ValidationError):
    def __init__(self):
        super().__init__("every HN block must have rank 1")


class NoValidH(ValidationError):
    def __init__(self, k):
        self.k = k
        super().__init__(f"no block index h brackets k={k} strictly")


class InconsistentDeltaTable(ValidationError):
    pass


class RangeViolation(ValidationError):
    pass


class NonIntegralDPrime(ValidationError):
    pass


class NotTwoNilpotent(ValidationError):
    def __init__(self):
        super().__init__("field is not 2-nilpotent")


class MalformedField(ValidationError):
    pass


class NotNilpotentWithin(CoHiggsError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"field is not nilpotent within {cap} iterations")
