"""Exception hierarchy shared by every engine in the package."""

from __future__ import annotations


class TreelikeError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(TreelikeError, ValueError):
    """Input does not satisfy the axioms of the structure it claims to be.

    Subclasses name the first offending tuple in ``args`` so that callers
    (and the CLI) can point at it.
    """

    def __init__(self, *witness):
        self.witness = witness
        super().__init__(*witness)

    def __str__(self):
        inner = ", ".join(str(w) for w in self.witness)
        return f"{type(self).__name__}({inner})"


class OutOfRange(ValidationError):
    pass


class InvariantBroken(TreelikeError, AssertionError):
    """A statement that must hold by theory failed at runtime.

    Raised instead of silently patching the result, so a failure here is
    a bug report against either the input or the implementation.
    """
