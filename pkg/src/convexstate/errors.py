"""Exception types shared across the package.

The CLI maps these onto its exit codes: precondition failures are domain
errors (exit 3), theory-file problems are usage errors (exit 2), and a
failed internal self-check is exit 4.
"""


class PreconditionError(ValueError):
    """An operation was called on inputs outside its stated domain."""


class TheoryFormatError(ValueError):
    """A theory file could not be parsed or failed field validation."""


class InternalCheckError(RuntimeError):
    """A self-check that should never fail did fail; indicates a bug."""
