"""Exception types shared across the package."""


class ValidationError(ValueError):
    """A record, filter, or configuration failed validation."""


class IngestError(ValidationError):
    """A corpus file could not be ingested.

    Carries enough context (file, line, field) to point at the offending
    NDJSON record.
    """

    def __init__(self, message, *, path=None, line=None, field=None):
        parts = []
        if path is not None:
            parts.append(str(path))
        if line is not None:
            parts.append(f"line {line}")
        if field is not None:
            parts.append(f"field '{field}'")
        prefix = ": ".join(parts)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.path = path
        self.line = line
        self.field = field


class UnknownEntityError(LookupError):
    """An id does not resolve against the loaded corpus."""


class UnsupportedCombinationError(ValueError):
    """The requested (doc_type, mode) pair has no linkage in the schema."""


class TrainingError(RuntimeError):
    """A prediction model cannot be trained for the requested slice."""


class LayoutError(RuntimeError):
    """Layout simulation failed (e.g. a node position went non-finite)."""
