"""
Errors module for Adjust
Exception hierarchy shared by the library and the CLI
"""

from typing import Dict, List, Optional


class AdjustmentError(Exception):
    """Base class for every error raised by the library"""


class GraphError(AdjustmentError):
    """Structural problem with a graph: cycle, self-loop, duplicate label"""


class ParseError(GraphError):
    """Malformed graph, query or BN file"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidVertex(AdjustmentError):
    """A vertex id or label that does not belong to the graph"""


class OverlapError(AdjustmentError):
    """Vertex sets that must be disjoint are not"""


class InclusionViolation(AdjustmentError):
    """One or more inclusion assumptions of a query fail"""

    def __init__(self, problems: List[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class PreconditionViolation(AdjustmentError):
    pass


class InvalidAdjustmentSet(AdjustmentError):
    pass


class NoFiniteCut(AdjustmentError):
    """The two terminals are adjacent, so no vertex cut separates them"""


class NotACut(AdjustmentError):
    pass


class PositivityViolation(AdjustmentError):
    """f(a|z) vanishes where the policy needs it"""

    def __init__(self, message: str, configuration: Optional[Dict[str, int]] = None):
        self.configuration = dict(configuration or {})
        if self.configuration:
            rendered = ", ".join(f"{k}={v}" for k, v in self.configuration.items())
            message = f"{message} at {{{rendered}}}"
        super().__init__(message)


class StateSpaceTooLarge(AdjustmentError):
    pass


class TooLarge(AdjustmentError):
    pass
