"""Exception types shared across the package."""


class GaugeDiffError(Exception):
    """Base class for domain failures (CLI exit code 1)."""


class StabilizerError(GaugeDiffError):
    """The drift vector has a non-trivial stabilizer (E_STABILIZER).

    The simplicial decomposition is only built for vectors whose orbit is
    free.  Perturbing the vector by a small generic amount gives a usable
    model, but the resulting law is that of the perturbed model.
    """


class NotRecurrentError(GaugeDiffError):
    """The drift does not produce a recurrent diffusion (E_NOT_RECURRENT)."""


class EnumerationLimitError(GaugeDiffError):
    """Exhaustive enumeration would exceed the configured size guard."""
