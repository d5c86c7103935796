"""Exception types shared across the toolkit."""


class ResumekitError(Exception):
    """Base class for all toolkit errors."""


class FileFormatError(ResumekitError):
    """A knowledge-base or data file failed to parse.

    Carries the source path and 1-based line number of the offending line.
    """

    def __init__(self, path, line_no, message):
        self.path = str(path)
        self.line_no = line_no
        super().__init__(f"{self.path}:{line_no}: {message}")


class PosCodeError(FileFormatError):
    """A lexicon entry used a part-of-speech code outside {V, N, A, ADV}."""


class ValidationError(ResumekitError):
    """An ontology schema violated one or more invariants.

    ``violations`` lists every violation found, not just the first.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"{len(self.violations)} violation(s): {lines}")


class UnknownClassError(ResumekitError):
    """A class name does not resolve in the active ontology schema."""


class LayoutError(ResumekitError):
    """An XML document does not follow the documented element layout."""


class DocumentMismatchError(ResumekitError):
    """Annotation spans exceed the length of the shared source document."""


class InvalidBetaError(ResumekitError):
    """F-measure beta must be a positive real."""


class MissingGoldError(ResumekitError):
    """A response document has no paired gold file (or vice versa)."""
