"""Exception hierarchy shared across the package."""


class FisherlabError(Exception):
    """Base class for all package-specific errors."""


class DegenerateModel(FisherlabError):
    """Model support is too small for information quantities to exist."""


class FlatLikelihood(FisherlabError):
    """Likelihood does not vary over the parameter domain."""


class SizeLimit(FisherlabError):
    """Requested angular-momentum representation exceeds the size cap."""


class PhaseUnwrapFailure(FisherlabError):
    """Wavefunction phase cannot be unwrapped inside its support."""


class ZeroPosterior(FisherlabError):
    """Posterior density integrated to (numerically) zero after an update."""


class ExcessiveFailures(FisherlabError):
    """Too many per-trial estimation failures in a Monte Carlo run."""
