"""Run configuration: a flat key/value text document with dotted keys.

Example (every value shown is also the default):

    pulse.wavelength_nm     = 800
    pulse.relative_bandwidth = 0.166666666666666667
    air.temperature_c       = 20
    air.pressure_pa         = 101325
    air.co2_percent         = 0.04
    air.water_vapor_pa      = 0
    length_m                = 1
    photons                 = 8e16
    lo                      = purified
    samples                 = 100000
    seed                    = 20260808
    perturb.length_m        = 0
    perturb.density_factor  = 0
    perturb.water_vapor_pa  = 0
    fluct.length_m          = 0
    fluct.density_factor    = 1e-6
    fluct.water_vapor_pa    = 10

Dimensioned keys carry their unit as a suffix; `perturb.*` are fixed
offsets, `fluct.*` are standard deviations of per-sample zero-mean
fluctuations.  Lines starting with # are comments.  Unknown keys are
rejected, with the offending key named.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .air_model import AirState
from .errors import ValidationError
from .mode_algebra import GaussianPulse
from .simulator import LO_CHOICES, SimConfig

DEFAULT_SEED = 20260808

_FLOAT_KEYS = {
    "pulse.wavelength_nm": 800.0,
    "pulse.relative_bandwidth": 1.0 / 6.0,
    "air.temperature_c": 20.0,
    "air.pressure_pa": 101325.0,
    "air.co2_percent": 0.04,
    "air.water_vapor_pa": 0.0,
    "length_m": 1.0,
    "photons": 8e16,
    "perturb.length_m": 0.0,
    "perturb.density_factor": 0.0,
    "perturb.water_vapor_pa": 0.0,
    "fluct.length_m": 0.0,
    "fluct.density_factor": 1e-6,
    "fluct.water_vapor_pa": 10.0,
}
_INT_KEYS = {"samples": 100_000, "seed": DEFAULT_SEED}
_STR_KEYS = {"lo": "purified"}


@dataclass(frozen=True)
class RunConfig:
    """Validated configuration shared by the CLI subcommands."""

    pulse: GaussianPulse
    state: AirState
    length_m: float
    photons: float
    lo: str
    samples: int
    seed: int
    perturb_length_m: float
    perturb_density_factor: float
    perturb_water_vapor_pa: float
    fluct_length_m: float
    fluct_density_factor: float
    fluct_water_vapor_pa: float

    def to_sim_config(self) -> SimConfig:
        return SimConfig(
            pulse=self.pulse,
            state=self.state,
            length_m=self.length_m,
            n_photons=self.photons,
            lo_choice=self.lo,
            sample_count=self.samples,
            rng_seed=self.seed,
            p_l_m=self.perturb_length_m,
            p_x=self.perturb_density_factor,
            p_pw_pa=self.perturb_water_vapor_pa,
            sigma_p_l_m=self.fluct_length_m,
            sigma_p_x=self.fluct_density_factor,
            sigma_p_pw_pa=self.fluct_water_vapor_pa,
        )

    def with_overrides(self, seed: int | None = None, samples: int | None = None) -> "RunConfig":
        cfg = self
        if seed is not None:
            cfg = replace(cfg, seed=seed)
        if samples is not None:
            if samples < 1:
                raise ValidationError(f"samples={samples} must be >= 1")
            cfg = replace(cfg, samples=samples)
        return cfg


def _parse_lines(text: str) -> dict[str, str]:
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ValidationError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.split("#", 1)[0].strip()
        if key in raw:
            raise ValidationError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value
    return raw


def parse_config(text: str) -> RunConfig:
    """Parse and validate a configuration document."""
    raw = _parse_lines(text)
    values: dict[str, object] = {}
    for key, value in raw.items():
        if key in _FLOAT_KEYS:
            try:
                values[key] = float(value)
            except ValueError as exc:
                raise ValidationError(f"key {key!r}: {value!r} is not a number") from exc
        elif key in _INT_KEYS:
            try:
                values[key] = int(float(value))
            except ValueError as exc:
                raise ValidationError(f"key {key!r}: {value!r} is not an integer") from exc
        elif key in _STR_KEYS:
            values[key] = value
        else:
            raise ValidationError(f"unknown configuration key {key!r}")
    return build_config(values)


def build_config(overrides: dict[str, object] | None = None) -> RunConfig:
    """RunConfig from defaults plus explicit key overrides."""
    values: dict[str, object] = {**_FLOAT_KEYS, **_INT_KEYS, **_STR_KEYS}
    if overrides:
        values.update(overrides)
    lo = str(values["lo"])
    if lo not in LO_CHOICES:
        raise ValidationError(f"key 'lo': {lo!r} not in {LO_CHOICES}")
    samples = int(values["samples"])
    if samples < 1:
        raise ValidationError(f"key 'samples': {samples} must be >= 1")
    pulse = GaussianPulse.from_wavelength(
        float(values["pulse.wavelength_nm"]) * 1e-9,
        float(values["pulse.relative_bandwidth"]),
    )
    state = AirState(
        temperature_c=float(values["air.temperature_c"]),
        pressure_pa=float(values["air.pressure_pa"]),
        co2_percent=float(values["air.co2_percent"]),
        water_vapor_pa=float(values["air.water_vapor_pa"]),
    )
    return RunConfig(
        pulse=pulse,
        state=state,
        length_m=float(values["length_m"]),
        photons=float(values["photons"]),
        lo=lo,
        samples=samples,
        seed=int(values["seed"]),
        perturb_length_m=float(values["perturb.length_m"]),
        perturb_density_factor=float(values["perturb.density_factor"]),
        perturb_water_vapor_pa=float(values["perturb.water_vapor_pa"]),
        fluct_length_m=float(values["fluct.length_m"]),
        fluct_density_factor=float(values["fluct.density_factor"]),
        fluct_water_vapor_pa=float(values["fluct.water_vapor_pa"]),
    )


def load_config(path: str | None) -> RunConfig:
    """RunConfig from a file path, or all defaults when path is None."""
    if path is None:
        return build_config()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read config {path!r}: {exc}") from exc
    return parse_config(text)
