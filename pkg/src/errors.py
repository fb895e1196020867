class ConfigError(ValueError):
    """Malformed or invalid run configuration or system parameters."""


class DomainError(RuntimeError):
    """A valid configuration the physics cannot answer for."""


class FieldShiftUndefined(DomainError):
    def __init__(self, detail: str = "") -> None:
        message = "field shift undefined"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class UnstableConfiguration(DomainError):
    def __init__(self, detail: str = "") -> None:
        message = "unstable configuration"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class NonPositiveDefiniteKineticForm(DomainError):
    def __init__(self, detail: str = "") -> None:
        message = "non-positive-definite kinetic form"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class InvalidFamilyInput(DomainError):
    pass
