# -*- coding: utf-8 -*-

"""
Exceptions raised by ppmadc.
"""


class PpmadcError(Exception):
    pass


class ConfigError(PpmadcError):
    pass


class ParamError(PpmadcError, ValueError):
    """A construction or instance parameter violates its precondition."""


class OutOfRange(ParamError):
    pass


class DivisibilityError(ParamError):
    def __init__(self, eta, beta, parts):
        super().__init__(
            f"eta*beta = {eta * beta} is not divisible by K-1 = {parts}")
        self.eta = eta
        self.beta = beta
        self.parts = parts


class PdaError(PpmadcError):
    pass


class ParseError(PdaError):
    def __init__(self, line, token):
        super().__init__(f"line {line}: malformed token {token!r}")
        self.line = line
        self.token = token


class ConditionViolation(PdaError):
    """
    A failed PDA condition. ``condition`` names the condition (A1, A2, A3),
    ``code`` is the message id shown by the reporters.
    """
    condition = None
    code = None


class A1Violation(ConditionViolation):
    condition = "A1"
    code = "unequal-star-count"

    def __init__(self, column, count, expected):
        super().__init__(
            f"column {column} has {count} stars (expected {expected})")
        self.column = column
        self.count = count
        self.expected = expected


class A2Violation(ConditionViolation):
    condition = "A2"
    code = "missing-label"

    def __init__(self, missing):
        super().__init__(f"label {missing} does not occur in the array")
        self.missing = missing


class A3Violation(ConditionViolation):
    condition = "A3"
    code = "uncrossed-pair"

    def __init__(self, first, second, reason):
        super().__init__(
            f"label pair at {first} and {second}: {reason}")
        self.first = first
        self.second = second
        self.reason = reason


class ProtocolError(PpmadcError):
    pass


class AccessMismatch(ProtocolError):
    def __init__(self, k, expected, found):
        super().__init__(
            f"reducer {k}: connectivity {sorted(expected)} does not match "
            f"the star rows {sorted(found)} of its impersonated column")
        self.k = k
        self.expected = expected
        self.found = found


class InfeasibleTransmission(ProtocolError):
    def __init__(self, k, t, packet):
        super().__init__(
            f"reducer {k} cannot compute packet {packet} "
            f"of its symbol for label {t}")
        self.k = k
        self.t = t
        self.packet = packet


class DecodeFailure(ProtocolError):
    def __init__(self, k, t, residual):
        super().__init__(
            f"reducer {k} cannot decode label {t}, "
            f"unresolved packets {sorted(residual)}")
        self.k = k
        self.t = t
        self.residual = residual


class IncompleteInput(ProtocolError):
    def __init__(self, k, missing):
        super().__init__(
            f"reducer {k} is missing the IVs of files {sorted(missing)}")
        self.k = k
        self.missing = missing


class OutputMismatch(ProtocolError):
    def __init__(self, k):
        super().__init__(f"reducer {k} computed a wrong output")
        self.k = k


class LoadMismatch(ProtocolError):
    def __init__(self, report):
        super().__init__(
            f"measured loads (r={report.r_measured}, L={report.L_measured}) "
            f"differ from (r={report.r_formula}, L={report.L_formula})")
        self.report = report


class PrivacyViolation(PpmadcError):
    def __init__(self, d, d_prime, tv_distance, column=None):
        context = "" if column is None else f" for observer column {column}"
        super().__init__(
            f"query law differs between d={d} and d={d_prime}{context} "
            f"(total variation {tv_distance})")
        self.column = column
        self.d = d
        self.d_prime = d_prime
        self.tv_distance = tv_distance
