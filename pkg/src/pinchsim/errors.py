"""Exception types shared across the simulator."""


class SingularMatrixError(ArithmeticError):
    """A linear system has no usable pivot (physically: a lossless resonant loop)."""


class NonConvergenceError(ArithmeticError):
    """An iterative routine exhausted its iteration budget."""


class InfeasibleSpacingError(ValueError):
    """The requested antenna count cannot fit on the waveguide at the minimum spacing."""


class DegenerateChannelError(ValueError):
    """All wireless links are identically zero; no beamforming target exists."""


class ConfigError(ValueError):
    """Invalid experiment configuration; carries the offending field name."""

    def __init__(self, field: str, reason: str):
        self.field = field
        self.reason = reason
        super().__init__(f"config field '{field}': {reason}")
