"""Exception hierarchy.

Input problems (malformed files, unknown names, cyclic cover data) derive from
:class:`InputError`; failed mathematical checks derive from :class:`CheckFailure`
and always carry a ``witness`` that makes the failure reproducible.
"""

from __future__ import annotations

from typing import Any


class FinFrameError(Exception):
    pass


class InputError(FinFrameError, ValueError):
    pass


class FormatError(InputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateElement(InputError):
    pass


class UnknownElement(InputError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class UnknownObject(UnknownElement):
    pass


class CycleDetected(InputError):
    def __init__(self, message: str, witness: tuple[str, str]):
        self.witness = witness
        super().__init__(message)


class NoBottom(InputError):
    pass


class CheckFailure(FinFrameError):
    """A mathematical check did not hold; ``witness`` pins down where."""

    def __init__(self, message: str, witness: Any = None):
        self.witness = witness
        super().__init__(message)


class NotAPartialOrder(CheckFailure):
    pass


class NotALattice(CheckFailure):
    pass


class NotDistributive(CheckFailure):
    pass


class InvalidTopology(CheckFailure):
    pass


class InvalidMorphism(CheckFailure):
    pass


class RoundTripFailure(CheckFailure):
    pass


class AdjunctionFailure(CheckFailure):
    pass


class AscentFailure(CheckFailure):
    pass


class InvolutionFailure(CheckFailure):
    pass


class CorrespondenceFailure(CheckFailure):
    pass


class LemmaFailure(CheckFailure):
    pass


class HypothesisViolated(CheckFailure):
    pass


class PropositionFailure(CheckFailure):
    pass


class StageFailure(CheckFailure):
    def __init__(self, message: str, index: int, witness: Any = None):
        self.index = index
        super().__init__(message, witness)


class ValidationFailure(CheckFailure):
    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__(
            f"{len(self.violations)} violation(s): " + "; ".join(self.violations[:5]),
            self.violations,
        )


class FrameFailure(CheckFailure):
    pass


class NotAnIdeal(CheckFailure):
    pass


class UniversalityFailure(CheckFailure):
    pass


class NotWellDefined(UniversalityFailure):
    pass


class NotUnique(UniversalityFailure):
    pass
