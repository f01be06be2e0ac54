"""Numerical tolerances shared by every validating constructor."""

from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class ToleranceConfig:
    """Absolute tolerances used when checking invariants.

    ``comm`` is a per-dimension factor: the commutator threshold for a
    family of ``d``-dimensional states is ``comm * d``. ``choi`` is relative
    to the largest Choi eigenvalue.
    """

    herm: float = 1e-9
    trace: float = 1e-9
    psd: float = 1e-9
    comm: float = 1e-9
    eig: float = 1e-12
    real: float = 1e-9
    tp: float = 1e-9
    morph: float = 1e-9
    choi: float = 1e-8

    def with_(self, **overrides) -> "ToleranceConfig":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    @classmethod
    def field_names(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))


DEFAULT_TOL = ToleranceConfig()
