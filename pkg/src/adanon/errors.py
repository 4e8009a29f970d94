"""Exception types shared across the package."""


class AdanonError(Exception):
    """Base class for all package errors."""


class SchemaError(AdanonError):
    """A data file does not match its expected schema."""


class MissingCategoryError(AdanonError):
    """The score table has fewer categories than the classification requires."""


class ScoreRangeError(AdanonError):
    """A raw score lies outside the 1..7 Likert range."""


class UnresolvedScoreError(AdanonError):
    """Normalization was attempted while a score is still unspecified."""


class ZeroMassError(AdanonError):
    """All privacy scores are zero; set coordinates are undefined."""


class EmptyFrontierError(AdanonError):
    """A selection was requested against a frontier with no vertices."""


class TooLargeError(AdanonError):
    """The exhaustive oracle was asked to run beyond its size limit."""


class EmptyInputError(AdanonError):
    """The input text is empty."""


class TransportError(AdanonError):
    """The LLM endpoint could not be reached after the configured retries."""


class BadResponseError(AdanonError):
    """The LLM returned no usable completion."""


class AlignmentError(AdanonError):
    """None of the recognized surfaces could be located in the original text."""


class ExhaustedRetriesError(AdanonError):
    """Pseudonym generation kept colliding after the retry budget."""


class SpanMismatchError(AdanonError):
    """A span's recorded surface does not match the text slice it points at."""


class InconsistentDocError(AdanonError):
    """An anonymized document does not reconstruct against its original."""


class BadIndexError(AdanonError):
    """A change-region index is out of range."""


class CorpusError(AdanonError):
    """The benchmark corpus is missing or malformed."""


class CorruptSessionError(AdanonError):
    """A persisted session file exists but cannot be decoded."""


class ConfigError(AdanonError):
    """The configuration file is malformed or points at missing resources."""
