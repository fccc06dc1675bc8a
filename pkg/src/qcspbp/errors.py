"""Exception types raised across the package."""


class QCSError(ValueError):
    """Base class for invalid inputs to qcspbp routines."""


class DimensionError(QCSError):
    """Invalid or mismatched dimensions."""


class ResolutionError(QCSError):
    """Quantizer resolution is not strictly positive."""


class ModelError(QCSError):
    """Invalid signal-model parameters (k, r, shapes)."""


class SVDError(QCSError):
    """The singular value decomposition did not converge."""


class FitError(QCSError):
    """Degenerate or ill-posed power-law fit."""


class ConfigError(QCSError):
    """Experiment configuration failed validation."""
