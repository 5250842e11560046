"""Exception types shared across the toolkit."""


class ToolError(Exception):
    """Base class for expected failures; the CLI maps these to exit code 1."""


class IngestionError(ToolError):
    """A corpus, pair, or model file could not be parsed."""


class CorruptStreamError(ToolError):
    """A code stream references a table entry that cannot exist."""


class ContainerFormatError(ToolError):
    """A container blob does not match the expected framing."""


class TruncatedStreamError(ToolError):
    """Compressed input ended before the payload was fully reconstructed."""


class MeasurementError(ToolError):
    """An external compressor failed or produced unusable output."""


class PredictionFormatError(ToolError):
    """A prediction interchange file is malformed or inconsistent."""


class UsageError(ToolError):
    """Bad command-line arguments."""
