"""Behavioral FDSOI FeFET model.

The ferroelectric layer is a bank of bistable hysterons (multi-domain
Preisach picture).  A terminal pulse produces an effective ferroelectric
voltage per hysteron; hysterons whose coercive voltage is exceeded relax
toward the drive polarity with time constant ``tau_v``.  Mean polarization
maps linearly onto threshold voltage, and a piecewise subthreshold /
linear-saturation expression gives the read current.

Channel coupling is spatial: each hysteron sits at a normalized position
along the channel and is boosted by a junction only if it lies within that
junction's reach.  Raising both junctions therefore erases the whole bank,
raising one erases only the fraction it reaches - which is what makes the
full vs. partial drain-erase distinction representable at all.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from enum import Enum

import numpy as np

from .hv import Rng, derive_rng

# Internal seed for per-device hysteron coercive-voltage draws.
_HYSTERON_SEED = 0xD0F1CE


class VtClass(str, Enum):
    LOW = "LowVt"
    HIGH = "HighVt"


@dataclass(frozen=True)
class FerroParams:
    """Ferroelectric stack and read-model constants.

    ps, pr      saturation / remnant polarization, uC/cm^2
    ec          coercive field, MV/cm
    tau_v       dipole relaxation time, s
    t_fe        ferroelectric thickness, nm
    kappa       fraction of gate-to-channel voltage across the ferroelectric
    mw          memory window, V
    vt_mid      threshold voltage at zero net polarization, V
    n_hysterons domain count
    sigma_vc    hysteron coercive-voltage spread, V
    junction_reach  fraction of the channel each junction can boost
    ss          subthreshold slope, V/decade
    i0          drain current at threshold, A
    k_lin       above-threshold transconductance factor, A/V^2
    i_on_max    on-current ceiling, A
    """

    ps: float = 15.0
    pr: float = 14.5
    ec: float = 1.0
    tau_v: float = 0.1e-6
    t_fe: float = 10.0
    kappa: float = 0.5
    mw: float = 1.0
    vt_mid: float = 0.6
    n_hysterons: int = 100
    sigma_vc: float = 0.05
    junction_reach: float = 0.65
    ss: float = 0.080
    i0: float = 1.0e-9
    k_lin: float = 5.6e-6
    i_on_max: float = 1.0e-5

    def __post_init__(self):
        if not 0.0 < self.pr <= self.ps:
            raise ValueError(f"need 0 < pr <= ps, got pr={self.pr}, ps={self.ps}")
        if not 0.0 < self.kappa <= 1.0:
            raise ValueError(f"kappa must be in (0, 1], got {self.kappa}")
        if not 0.0 < self.junction_reach <= 1.0:
            raise ValueError(f"junction_reach must be in (0, 1], got {self.junction_reach}")
        for name in ("ps", "ec", "tau_v", "t_fe", "mw", "sigma_vc", "ss", "i0",
                     "k_lin", "i_on_max"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.n_hysterons < 1:
            raise ValueError("n_hysterons must be >= 1")

    @property
    def vc_mean(self) -> float:
        """Mean hysteron coercive voltage: Ec * t_fe (MV/cm * nm -> V)."""
        return self.ec * self.t_fe * 0.1

    @classmethod
    def from_file(cls, path) -> "FerroParams":
        """Plain key=value parameter file; '#' starts a comment."""
        known = {f.name: f.type for f in fields(cls)}
        kwargs = {}
        with open(path) as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(f"{path}:{lineno}: expected key = value")
                key, val = (part.strip() for part in line.split("=", 1))
                if key not in known:
                    raise ValueError(f"{path}:{lineno}: unknown parameter {key!r}")
                kwargs[key] = int(val) if key == "n_hysterons" else float(val)
        return cls(**kwargs)


@dataclass(frozen=True)
class Pulse:
    """One simultaneous bias of all three terminals for a fixed duration."""

    vg: float
    vd: float
    vs: float
    duration: float

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError(f"pulse duration must be positive, got {self.duration}")


class FeFETState:
    """Mutable polarization state of one device (single-owner)."""

    def __init__(self, params: FerroParams, vt_offset: float = 0.0, device_index: int = 0):
        self.params = params
        self.vt_offset = float(vt_offset)
        self.device_index = int(device_index)
        n = params.n_hysterons
        rng = derive_rng(_HYSTERON_SEED, device_index)
        vc = rng.normal(params.vc_mean, params.sigma_vc, size=n)
        # Keep coercive voltages physical even for absurd spreads.
        self.vc = np.maximum(vc, 0.05 * params.vc_mean)
        self.x = (np.arange(n) + 0.5) / n  # source end 0.0, drain end 1.0
        self.pol = np.full(n, -1.0)  # fully erased: high-Vt side

    def p_ratio(self) -> float:
        """Net polarization as a fraction of saturation, in [-1, +1]."""
        return float(self.pol.mean())

    def polarization(self) -> float:
        """Net polarization in uC/cm^2."""
        return self.params.ps * self.p_ratio()


def new_device(params: FerroParams, vt_offset: float = 0.0, device_index: int = 0) -> FeFETState:
    """Fresh device, fully erased, with its own coercive-voltage draw."""
    return FeFETState(params, vt_offset, device_index)


def apply_pulse(state: FeFETState, pulse: Pulse) -> FeFETState:
    """Advance the hysteron bank through one terminal pulse (in place).

    Effective drive per hysteron is kappa * (vg - v_ch) where v_ch is the
    channel potential the hysteron sees: the larger of the junction biases
    whose reach covers it (junction coupling only ever boosts the channel).
    Hysterons with |drive| above their coercive voltage relax toward the
    drive polarity by 1 - exp(-duration / tau_v).
    """
    p = state.params
    cov_d = state.x > 1.0 - p.junction_reach
    cov_s = state.x < p.junction_reach
    v_ch = np.maximum(np.where(cov_d, pulse.vd, 0.0), np.where(cov_s, pulse.vs, 0.0))
    v_fe = p.kappa * (pulse.vg - v_ch)
    switching = np.abs(v_fe) > state.vc
    frac = 1.0 - np.exp(-pulse.duration / p.tau_v)
    target = np.sign(v_fe)
    state.pol = np.where(
        switching, state.pol + (target - state.pol) * frac, state.pol
    )
    return state


def threshold_voltage(state: FeFETState) -> float:
    """Vt decreases linearly with polarization across the memory window."""
    p = state.params
    return p.vt_mid - state.p_ratio() * (p.mw / 2.0) + state.vt_offset


def vt_class(state: FeFETState) -> VtClass:
    """Low-Vt iff net polarization points to the programmed side."""
    return VtClass.LOW if state.p_ratio() > 0.0 else VtClass.HIGH


def read_current(state: FeFETState, vg_read: float, vd_read: float) -> float:
    """Drain current of the read pulse.

    Subthreshold: exponential, one decade per ``ss`` volts of gate drive.
    Above threshold: linear in overdrive and drain bias, compressed toward
    ``i_on_max``.  Strictly decreasing in Vt throughout.
    """
    if vd_read <= 0:
        raise ValueError(f"read drain bias must be positive, got {vd_read}")
    p = state.params
    vt = threshold_voltage(state)
    if vg_read < vt:
        return p.i0 * 10.0 ** ((vg_read - vt) / p.ss)
    raw = p.i0 + p.k_lin * (vg_read - vt) * vd_read
    return p.i_on_max * float(np.tanh(raw / p.i_on_max))


def sample_vt_offsets(n: int, three_sigma: float, rng: Rng) -> np.ndarray:
    """Gaussian device-to-device Vt offsets with the stated 3-sigma spread."""
    if three_sigma <= 0:
        raise ValueError(f"three_sigma must be positive, got {three_sigma}")
    if n == 0:
        return np.empty(0)
    return rng.normal(0.0, three_sigma / 3.0, size=n)


def transfer_sweep(
    state: FeFETState,
    vg_start: float = -0.5,
    vg_stop: float = 2.0,
    step: float = 0.1,
    vd_read: float = 0.1,
) -> list[tuple[float, float]]:
    """Id-Vg sweep rows (vg, id) for transfer-curve export."""
    points = []
    n_steps = int(round((vg_stop - vg_start) / step))
    for i in range(n_steps + 1):
        vg = vg_start + i * step
        points.append((vg, read_current(state, vg, vd_read)))
    return points


# Canonical single-operation pulses (program / erase / inhibition semantics).
V_PROGRAM = 4.0
V_ERASE = 4.0
T_CHARACTERIZATION = 10e-6


def program_pulse(duration: float = T_CHARACTERIZATION) -> Pulse:
    return Pulse(vg=V_PROGRAM, vd=0.0, vs=0.0, duration=duration)


def drain_erase_pulse(duration: float = T_CHARACTERIZATION, both: bool = True) -> Pulse:
    return Pulse(vg=0.0, vd=V_ERASE, vs=V_ERASE if both else 0.0, duration=duration)
