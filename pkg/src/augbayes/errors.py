"""Exception hierarchy shared across the package."""


class AugBayesError(Exception):
    """Base class for all package errors."""


class DatasetError(AugBayesError, ValueError):
    """Malformed or unusable tabular input."""


class SchemaMismatchError(AugBayesError, ValueError):
    """Two objects were built against different schemas."""


class UnseenValueError(AugBayesError, ValueError):
    """A categorical label is not part of the fitted attribute domain."""


class StructureError(AugBayesError, ValueError):
    """A network structure violates the augmented naive Bayes constraints."""


class EnumerationCapError(AugBayesError, ValueError):
    """Exhaustive search was requested above the configured attribute cap."""


class ModelFormatError(AugBayesError, ValueError):
    """A model document could not be parsed."""
