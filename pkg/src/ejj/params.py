"""Junction parameter records, SI derivations, and the plasmon mode basis.

Internal unit convention: hbar = 1, every energy is stored as an angular
frequency in rad/s and every length in meters.  SI quantities only enter
through :func:`derive_junction_params` and the photon coupling formula in
:mod:`ejj.coupling`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import InitVar, dataclass, field

import numpy as np
from scipy.constants import e as ELEMENTARY_CHARGE
from scipy.constants import hbar, mu_0, physical_constants

from .errors import DomainError, QuantizationValidityWarning

FLUX_QUANTUM = physical_constants["mag. flux quantum"][0]

#: Minimum E_J/E_C ratio accepted without an explicit override.
TRANSMON_RATIO_MIN = 10.0

#: theta_ZPF above which the quartic expansion of the cosine gets dubious.
ZPF_WARN_THRESHOLD = 0.5


@dataclass(frozen=True)
class JunctionParams:
    """Physical parameters of a single extended junction.

    Parameters
    ----------
    e_j, e_c:
        Josephson and charging energies in rad/s.
    lambda_j:
        Josephson penetration length in meters.
    l_x:
        Junction length in meters.
    n_modes:
        Number of plasmon modes retained for this junction.
    allow_weak_transmon:
        Permit construction with ``e_j / e_c < 10`` (outside the transmon
        regime the quantization used here degrades).

    The plasma frequency ``omega_pl = sqrt(8 e_j e_c)`` is always derived;
    use :meth:`from_plasma_frequency` to fix it and back out ``e_j``/``e_c``.
    """

    e_j: float
    e_c: float
    lambda_j: float
    l_x: float
    n_modes: int = 3
    omega_pl: float = field(default=0.0, compare=False)
    allow_weak_transmon: InitVar[bool] = False

    def __post_init__(self, allow_weak_transmon):
        for name in ("e_j", "e_c", "lambda_j", "l_x"):
            if getattr(self, name) <= 0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)}")
        if self.n_modes < 1:
            raise DomainError(f"n_modes must be >= 1, got {self.n_modes}")
        derived = math.sqrt(8.0 * self.e_j * self.e_c)
        if self.omega_pl and abs(self.omega_pl - derived) > 1e-12 * derived:
            raise DomainError(
                f"omega_pl={self.omega_pl} inconsistent with sqrt(8 e_j e_c)={derived}"
            )
        object.__setattr__(self, "omega_pl", derived)
        if self.e_j / self.e_c < TRANSMON_RATIO_MIN and not allow_weak_transmon:
            raise DomainError(
                f"e_j/e_c = {self.e_j / self.e_c:.3g} < {TRANSMON_RATIO_MIN}; "
                "pass allow_weak_transmon=True to construct anyway"
            )

    @classmethod
    def from_plasma_frequency(cls, omega_pl, *, e_j=None, e_c=None,
                              lambda_j=1.0, l_x=1.0, n_modes=3,
                              allow_weak_transmon=False):
        """Build params from a measured/assumed plasma frequency.

        Exactly one of ``e_j``, ``e_c`` must be given; the other follows
        from ``omega_pl**2 = 8 e_j e_c``.
        """
        if (e_j is None) == (e_c is None):
            raise DomainError("give exactly one of e_j, e_c together with omega_pl")
        if omega_pl <= 0:
            raise DomainError("omega_pl must be positive")
        if e_c is None:
            e_c = omega_pl**2 / (8.0 * e_j)
        else:
            e_j = omega_pl**2 / (8.0 * e_c)
        return cls(e_j=e_j, e_c=e_c, lambda_j=lambda_j, l_x=l_x,
                   n_modes=n_modes, allow_weak_transmon=allow_weak_transmon)

    @property
    def length_ratio(self) -> float:
        """lambda_j / l_x, the knob controlling the mode spacing."""
        return self.lambda_j / self.l_x

    def with_length(self, l_x) -> "JunctionParams":
        return JunctionParams(e_j=self.e_j, e_c=self.e_c, lambda_j=self.lambda_j,
                              l_x=l_x, n_modes=self.n_modes)


@dataclass(frozen=True)
class SiInputs:
    """SI-unit device inputs (critical current density route).

    j_c in A/m^2, lengths in meters, temperature in kelvin.
    """

    j_c: float
    delta_z: float
    lambda_l: float
    junction_width: float
    temperature: float = 0.020

    def __post_init__(self):
        for name in ("j_c", "delta_z", "lambda_l", "junction_width", "temperature"):
            if getattr(self, name) <= 0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)}")


def josephson_length(si: SiInputs) -> float:
    """lambda_J = sqrt(Phi_0 / (2 pi mu_0 (delta_z + 2 lambda_L) j_c)), meters."""
    return math.sqrt(
        FLUX_QUANTUM / (2.0 * math.pi * mu_0 * (si.delta_z + 2.0 * si.lambda_l) * si.j_c)
    )


def derive_junction_params(si: SiInputs, l_x, *, omega_pl=None, e_c=None,
                           n_modes=3) -> JunctionParams:
    """Derive junction energies from SI inputs.

    The Josephson energy follows from the critical current through the
    junction area ``width * l_x``; expressed in rad/s it reduces to
    ``E_J = I_c / 2e``.  The charging energy is not derivable from the
    inputs here, so either ``omega_pl`` (preferred, then
    ``E_C = omega_pl**2 / 8 E_J``) or an explicit ``e_c`` must be supplied.
    """
    if l_x <= 0:
        raise DomainError(f"l_x must be positive, got {l_x}")
    lam = josephson_length(si)
    i_c = si.j_c * si.junction_width * l_x
    e_j = i_c / (2.0 * ELEMENTARY_CHARGE)
    if omega_pl is not None:
        e_c = omega_pl**2 / (8.0 * e_j)
    elif e_c is None:
        raise DomainError(
            "charging energy underdetermined: supply either 'omega_pl' or 'e_c'"
        )
    return JunctionParams(e_j=e_j, e_c=e_c, lambda_j=lam, l_x=l_x, n_modes=n_modes)


def mode_frequency(params: JunctionParams, m: int) -> float:
    """Plasmon dispersion: omega_m = omega_pl sqrt(1 + (lambda_J pi m / L_x)^2)."""
    if m < 0:
        raise DomainError(f"mode index must be >= 0, got {m}")
    x = params.lambda_j * math.pi * m / params.l_x
    return params.omega_pl * math.sqrt(1.0 + x * x)


def mode_profile(params: JunctionParams, m: int, x):
    """Spatial profile Xi_m(x) on x in [-L_x/2, L_x/2].

    Xi_0 = 1, Xi_m = sqrt(2) sin(pi m x / L_x) for odd m,
    sqrt(2) cos(pi m x / L_x) for even m; orthonormal under
    integral dx/L_x.
    """
    if m < 0:
        raise DomainError(f"mode index must be >= 0, got {m}")
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > params.l_x / 2 * (1 + 1e-12)):
        raise DomainError("position outside the junction (|x| > L_x/2)")
    if m == 0:
        out = np.ones_like(x)
    elif m % 2 == 1:
        out = math.sqrt(2.0) * np.sin(math.pi * m * x / params.l_x)
    else:
        out = math.sqrt(2.0) * np.cos(math.pi * m * x / params.l_x)
    return out if out.ndim else float(out)


def zero_point_phase(params: JunctionParams, m: int) -> float:
    """Zero-point phase fluctuation theta_ZPF = sqrt(4 E_C / omega_m).

    Warns (does not fail) when the value exceeds 0.5, where the quartic
    truncation of the cosine starts to lose validity.
    """
    theta = math.sqrt(4.0 * params.e_c / mode_frequency(params, m))
    if theta > ZPF_WARN_THRESHOLD:
        warnings.warn(
            f"theta_ZPF = {theta:.3f} > {ZPF_WARN_THRESHOLD} for mode {m}; "
            "harmonic quantization is marginal here",
            QuantizationValidityWarning,
            stacklevel=2,
        )
    return theta


@dataclass(frozen=True)
class ModeBasis:
    """Frequencies and parities of the retained plasmon modes."""

    params: JunctionParams
    frequencies: tuple = ()
    parities: tuple = ()

    def __post_init__(self):
        freqs = tuple(mode_frequency(self.params, m) for m in range(self.params.n_modes))
        pars = tuple("even" if m % 2 == 0 else "odd" for m in range(self.params.n_modes))
        object.__setattr__(self, "frequencies", freqs)
        object.__setattr__(self, "parities", pars)

    @property
    def n_modes(self) -> int:
        return self.params.n_modes

    def profile(self, m: int, x):
        return mode_profile(self.params, m, x)


# Named presets (see the paper-facing CLI): "toy" carries the quoted
# analytic estimates, "fem" the finite-element-derived device values.
# The quoted toy numbers are mutually inconsistent at rounding level, so
# the preset fixes (omega_pl, e_c) and lets e_j follow from the invariant.
PRESETS = {
    "toy": {
        "junction": {
            "omega_pl": 2 * math.pi * 5e9,
            "e_c": 2 * math.pi * 0.06e9,
            "lambda_j": 880e-6,
            "l_x": 880e-6,
            "n_modes": 3,
        },
        "si": {
            "j_c": 1e4,              # 10 nA/um^2
            "delta_z": 2e-9,
            "lambda_l": 16e-9,
            "junction_width": 10e-9,
            "temperature": 0.020,
        },
        "resonator": {
            "l_res": 20 * 880e-6,    # long resonator: form factor ~ 1
            "mode_count": 5,
            "zero_point_field": 0.2,
        },
        "t1": 30e-6,
    },
    "fem": {
        "junction": {
            "e_c": 2 * math.pi * 84e6,
            "e_j": 2 * math.pi * 22e9,
            "lambda_j": 880e-6,
            "l_x": 440e-6,
            "n_modes": 3,
        },
        "si": {
            "j_c": 1e4,
            "delta_z": 2e-9,
            "lambda_l": 16e-9,
            "junction_width": 10e-9,
            "temperature": 0.020,
        },
        "resonator": {
            "l_res": 20 * 440e-6,
            "mode_count": 5,
            "zero_point_field": 0.2,
        },
        "g00": 2 * math.pi * 24e6,
        "t1": 30e-6,
    },
}


def load_preset(name: str) -> dict:
    """Return a deep-ish copy of a named preset block."""
    try:
        preset = PRESETS[name]
    except KeyError:
        raise DomainError(
            f"unknown preset {name!r}; available: {sorted(PRESETS)}"
        ) from None
    return {k: (dict(v) if isinstance(v, dict) else v) for k, v in preset.items()}


def preset_junction_params(name: str) -> JunctionParams:
    """Construct :class:`JunctionParams` for a named preset."""
    block = dict(load_preset(name)["junction"])
    if "omega_pl" in block:
        omega_pl = block.pop("omega_pl")
        return JunctionParams.from_plasma_frequency(omega_pl, **block)
    return JunctionParams(**block)
