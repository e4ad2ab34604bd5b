"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """A physically invalid input (out of the model's domain of validity)."""


class ConfigError(ValueError):
    """A run configuration that fails validation before any computation."""


class DimensionError(DomainError):
    """Operator/space dimensions are incompatible or exceed the size guard."""


class DispersiveValidityError(DomainError):
    """Adiabatic elimination requested outside the dispersive regime."""

    def __init__(self, junction_mode, resonator_mode, g, delta):
        self.junction_mode = junction_mode
        self.resonator_mode = resonator_mode
        super().__init__(
            f"dispersive validity |delta| > 10|g| fails for junction mode "
            f"m={junction_mode}, resonator mode n={resonator_mode}: "
            f"|g|={abs(g):.4g} rad/s, |delta|={abs(delta):.4g} rad/s"
        )


class IntegrationError(RuntimeError):
    """Time integration failed (step-size underflow or non-convergence)."""


class QuantizationValidityWarning(UserWarning):
    """Zero-point phase fluctuation large enough to question the expansion."""


class GateRegimeWarning(UserWarning):
    """Drive strength outside the regime assumed by the gate protocol."""
