"""Ground-state dressing of the mirror-field system, to second order.

The interaction creates virtual states with one mirror quantum and a pair
of photons.  For an ordered index pair (k, j) the summand amplitude is

    c_kj = (1/L) sqrt(hbar/(8 m omega0)) (-1)**(k+j)
           * sqrt(w_k w_j) / (omega0 + w_k + w_j) * cutoff weight.

Pairs are stored unordered (k <= j) with multiplicity 2 for k != j and
1 for k = j.  The amplitude of the corresponding *normalized* Fock state
is sqrt(2 * mult) * c_kj, so the squared norm of the first-order dressing
is lambda_sq = 2 * sum_pairs mult * c_kj**2, and the second-order energy
shift obeys, exactly and for any cutoff,

    delta_E = - sum_pairs 2 * mult * c_kj_raw * c_kj * hbar*(omega0+w_k+w_j)

(c_kj_raw is the unweighted amplitude; with a sharp cutoff the product
c_raw * c reduces to c**2).  The shift itself is the double sum

    delta_E = - hbar^2/(4 L^2 m omega0) * sum_kj w_k w_j/(omega0+w_k+w_j)

over ordered pairs, strictly negative for any nonempty mode set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateModeSetError, UsageError
from .model import CutoffSpec, ModeSet, PhysicalParams, cutoff_weight

__all__ = [
    "DressedAmplitudes",
    "PhotonSpectrum",
    "energy_shift",
    "energy_shift_from_amplitudes",
    "dressed_amplitudes",
    "photon_spectrum",
]


@dataclass(frozen=True)
class DressedAmplitudes:
    """First-order pair-excitation content of the dressed ground state."""

    params: PhysicalParams
    cutoff: CutoffSpec
    pairs: np.ndarray          # (P, 2) int, k <= j
    coeffs: np.ndarray         # cutoff-weighted amplitudes c_kj
    coeffs_raw: np.ndarray     # amplitudes without the cutoff weight
    weights: np.ndarray        # cutoff weights per pair
    multiplicities: np.ndarray  # 2 for k != j, 1 for k = j

    @property
    def pair_frequencies(self) -> np.ndarray:
        """Total pair frequency w_k + w_j per stored pair."""
        w1 = self.params.omega1
        return (self.pairs[:, 0] + self.pairs[:, 1]) * w1

    @property
    def normalized_state_amplitudes(self) -> np.ndarray:
        """Amplitudes on normalized Fock states: sqrt(2*mult) * c_kj."""
        return np.sqrt(2.0 * self.multiplicities) * self.coeffs

    @property
    def lambda_sq(self) -> float:
        """Squared norm of the first-order dressing (normalization deficit)."""
        return float(np.sum(2.0 * self.multiplicities * self.coeffs**2))

    def coefficient(self, k: int, j: int) -> float:
        """Summand amplitude c_kj for an (unordered) mode pair."""
        lo, hi = min(k, j), max(k, j)
        mask = (self.pairs[:, 0] == lo) & (self.pairs[:, 1] == hi)
        idx = np.nonzero(mask)[0]
        if idx.size == 0:
            raise UsageError(f"pair ({k}, {j}) is outside the stored mode set")
        return float(self.coeffs[idx[0]])


@dataclass(frozen=True)
class PhotonSpectrum:
    """Histogram of virtual-pair weight versus total pair frequency."""

    bin_edges: np.ndarray
    weights: np.ndarray
    bin_width: float
    peak_frequency: float = field(default=np.nan)

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())


def _mode_set(params, cutoff, n_max):
    modes = ModeSet.build(params, cutoff, n_max)
    if len(modes) == 0:
        raise DegenerateModeSetError(
            f"cutoff omega_m = {cutoff.omega_m:g} truncates every mode "
            f"(fundamental frequency {params.omega1:g})")
    return modes


def _pair_tables(params, cutoff, n_max):
    """Unordered pair arrays (k<=j): indices, multiplicities, weights, freqs."""
    modes = _mode_set(params, cutoff, n_max)
    n = len(modes)
    k_idx, j_idx = np.meshgrid(modes.indices, modes.indices, indexing="ij")
    keep = k_idx <= j_idx
    kk, jj = k_idx[keep], j_idx[keep]
    mult = np.where(kk == jj, 1.0, 2.0)
    w1 = params.omega1
    wk, wj = kk * w1, jj * w1
    if cutoff.kind == "sharp":
        if cutoff.sharp_rule == "per_mode":
            wgt = np.ones_like(wk)  # truncation already applied via the mode set
        else:
            wgt = np.where(wk + wj <= cutoff.omega_m, 1.0, 0.0)
    else:
        wgt = np.exp(-(wk + wj) / cutoff.omega_m)
    return np.column_stack([kk, jj]), mult, wgt, wk, wj


def energy_shift(params: PhysicalParams, cutoff: CutoffSpec,
                 n_max: int | None = None) -> float:
    """Second-order ground-state energy shift, always negative.

    Parameters
    ----------
    params : PhysicalParams
    cutoff : CutoffSpec
        Determines the range and weighting of the double mode sum.
    n_max : int, optional
        Explicit mode count overriding the cutoff-derived size.
    """
    cutoff.check_scale(params)
    pairs, mult, wgt, wk, wj = _pair_tables(params, cutoff, n_max)
    den = params.omega0 + wk + wj
    s = np.sum(mult * wgt * wk * wj / den)
    pre = params.hbar**2 / (4.0 * params.length**2 * params.mass * params.omega0)
    return float(-pre * s)


def dressed_amplitudes(params: PhysicalParams, cutoff: CutoffSpec,
                       n_max: int | None = None) -> DressedAmplitudes:
    """First-order amplitudes of the dressed ground state, pair by pair."""
    cutoff.check_scale(params)
    pairs, mult, wgt, wk, wj = _pair_tables(params, cutoff, n_max)
    signs = np.where((pairs[:, 0] + pairs[:, 1]) % 2 == 0, 1.0, -1.0)
    pre = np.sqrt(params.hbar / (8.0 * params.mass * params.omega0)) / params.length
    raw = pre * signs * np.sqrt(wk * wj) / (params.omega0 + wk + wj)
    return DressedAmplitudes(
        params=params, cutoff=cutoff, pairs=pairs,
        coeffs=raw * wgt, coeffs_raw=raw, weights=wgt, multiplicities=mult)


def energy_shift_from_amplitudes(amps: DressedAmplitudes) -> float:
    """Reconstruct the energy shift from the stored amplitudes.

    Exact identity for any cutoff:
    delta_E = -sum 2*mult*c_raw*c*hbar*(omega0 + w_k + w_j).
    """
    hbar = amps.params.hbar
    den = amps.params.omega0 + amps.pair_frequencies
    return float(-np.sum(2.0 * amps.multiplicities * amps.coeffs_raw
                         * amps.coeffs * hbar * den))


def photon_spectrum(amps: DressedAmplitudes, bin_width: float | None = None) -> PhotonSpectrum:
    """Histogram |amplitude|^2 of virtual pairs versus w_k + w_j.

    bin_width defaults to omega0/20.  The sum of all bin weights equals
    lambda_sq of the generating amplitudes; the peak location is reported
    as a diagnostic.
    """
    if bin_width is None:
        bin_width = amps.params.omega0 / 20.0
    if bin_width <= 0:
        raise UsageError(f"bin_width must be positive, got {bin_width}")
    s = amps.pair_frequencies
    span = float(s.max() - s.min())
    if span > 0 and bin_width > span:
        raise UsageError(
            f"bin_width {bin_width:g} exceeds the spectral range {span:g}")
    w = amps.normalized_state_amplitudes**2
    n_bins = max(1, int(np.ceil((span + 1e-12 * max(span, 1.0)) / bin_width)) if span > 0 else 1)
    edges = s.min() + bin_width * np.arange(n_bins + 1)
    idx = np.minimum(((s - s.min()) / bin_width).astype(np.int64), n_bins - 1)
    weights = np.zeros(n_bins)
    np.add.at(weights, idx, w)
    centers = 0.5 * (edges[:-1] + edges[1:])
    peak = float(centers[int(np.argmax(weights))])
    return PhotonSpectrum(bin_edges=edges, weights=weights,
                          bin_width=float(bin_width), peak_frequency=peak)
