"""Exception types shared across the label engine.

Every error raised on purpose by this package derives from
:class:`HierLabelError`, so callers (and the CLI) can catch one type and
report a machine-readable ``kind``.
"""


class HierLabelError(Exception):
    """Base class for all errors raised by this package."""

    @property
    def kind(self) -> str:
        return type(self).__name__


class ParseError(HierLabelError):
    """A text input (hierarchy, vocabulary, matrix, embedding, config file) is malformed."""


class CycleError(HierLabelError):
    """The hierarchy graph contains a directed cycle."""


class DanglingEdgeError(HierLabelError):
    """An edge references a synset that was never declared."""


class UnknownSynsetError(HierLabelError):
    """A synset id is not present in the hierarchy graph."""


class DimensionMismatchError(HierLabelError):
    """Array shapes or lengths do not line up."""


class InvariantError(HierLabelError):
    """A value-level invariant was violated (e.g. labels outside {0,1})."""


class InvalidThresholdError(HierLabelError):
    """A confidence threshold lies outside [0, 1]."""


class NonFiniteLossError(HierLabelError):
    """A loss component evaluated to NaN or infinity."""


class ZeroVectorError(HierLabelError):
    """An embedding vector has (numerically) zero norm and cannot be normalized."""


class MissingEmbeddingError(HierLabelError):
    """A required surface string has no embedding and mock fallback is disabled."""


class BadTemplateError(HierLabelError):
    """A prompt template does not contain exactly one ``{}`` placeholder."""


class InvalidConfigError(HierLabelError):
    """A configuration value is out of range or unknown."""
