"""Exception types shared across the package."""


class ParadefiniteError(Exception):
    """Base class for all errors raised by this package."""


class FormulaSyntaxError(ParadefiniteError):
    """Raised when formula or sequent text cannot be parsed.

    ``offset`` is the byte offset of the offending position in the input and
    ``expected`` the set of token descriptions that would have been accepted
    there (empty when the problem is an unknown character).
    """

    def __init__(self, message, text, offset, expected=()):
        self.text = text
        self.offset = offset
        self.expected = frozenset(expected)
        detail = message
        if self.expected:
            detail += "; expected one of: " + ", ".join(sorted(self.expected))
        super().__init__(f"{detail} (at offset {offset})")


class ResourceBoundError(ParadefiniteError):
    """Raised when an enumeration would exceed a configured cap."""

    def __init__(self, what, requested, cap):
        self.what = what
        self.requested = requested
        self.cap = cap
        super().__init__(f"{what}: {requested} exceeds the cap of {cap}")


class MissingAtomError(ParadefiniteError, KeyError):
    def __init__(self, atom):
        self.atom = atom
        super().__init__(f"valuation does not assign atom {atom!r}")

    def __str__(self):
        return self.args[0]


class NonAtomicSequentError(ParadefiniteError, ValueError):
    pass


class NameCollisionError(ParadefiniteError, ValueError):
    pass
