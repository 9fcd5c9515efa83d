"""Exception hierarchy shared by every contrakt module."""

from __future__ import annotations


class ContraktError(Exception):
    """Base class for all library errors."""


class UnknownLabel(ContraktError, KeyError):
    def __init__(self, label: str):
        super().__init__(label)
        self.label = label

    def __str__(self) -> str:
        return f"unknown label {self.label!r}"


class NonEdge(ContraktError):
    """Raised when a contraction is requested on a pair that is not an edge."""

    def __init__(self, kept: str, removed: str, step: int | None = None):
        self.kept = kept
        self.removed = removed
        self.step = step
        where = f" at step {step}" if step is not None else ""
        super().__init__(f"({kept}, {removed}) is not an edge{where}")


class NotAPartition(ContraktError):
    pass


class InvalidWitness(ContraktError):
    pass


class NotAMatching(ContraktError):
    pass


class CrossesBlocks(ContraktError):
    pass


class RemovesRepresentative(ContraktError):
    pass


class BudgetTooLarge(ContraktError):
    pass


class MalformedInstance(ContraktError):
    pass


class ImperfectTotal(MalformedInstance):
    pass


class TooLarge(ContraktError):
    pass


class NotSubset(ContraktError):
    pass


class DuplicateLabel(ContraktError):
    pass


class SameColorEdgeOp(ContraktError):
    pass


class NotATree(ContraktError):
    pass


class InvalidInputs(ContraktError):
    pass


class BadParams(ContraktError):
    pass


class NotSquare(ContraktError):
    pass


class ParseError(ContraktError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        prefix = ""
        if source is not None:
            prefix += f"{source}:"
        if line is not None:
            prefix += f"{line}: "
        elif prefix:
            prefix += " "
        super().__init__(prefix + message)
