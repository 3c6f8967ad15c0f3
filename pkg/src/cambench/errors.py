"""Exception types shared across the package."""


class DecodeError(Exception):
    """Raised when an image, depth, or panoptic file cannot be decoded."""


class CatalogError(ValueError):
    """Raised when a degradation factor name is not in the catalog."""


class ConstantSeriesError(ValueError):
    """Raised when a correlation is requested on a zero-variance series."""
