"""
Spectral features - peaks, dips, widths and bandgaps of spectral densities

Features:
- Local maxima/minima by scipy.signal.find_peaks with 3-point parabolic refinement
- Full width at half maximum by linear interpolation of the crossings
- Bandgaps: contiguous windows where transmitted/input density < threshold
- Ripple below a fraction of the global maximum is ignored

Usage:
    from src.observables.features import spectral_features, FeatureThresholds

    features = spectral_features(spectra, FeatureThresholds(bandgap=0.01))
    gaps = [f for f in features if f.kind == FeatureKind.BANDGAP]
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy.signal import find_peaks

from src.core.model import FeatureKind, SpectralFeature, SpectralSolution

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FeatureThresholds:
    """Detection thresholds, all relative"""
    peak_floor: float = 1e-4  # of the channel's global max
    bandgap: float = 0.01  # transmitted / input density
    input_floor: float = 1e-3  # bandgaps only where input >= this fraction of its max


def refine_extremum(x: np.ndarray, y: np.ndarray, index: int) -> Tuple[float, float]:
    """Vertex of the parabola through the sample and its two neighbours"""
    if index <= 0 or index >= y.size - 1:
        return float(x[index]), float(y[index])
    left, mid, right = y[index - 1], y[index], y[index + 1]
    curvature = left - 2.0 * mid + right
    if curvature == 0:
        return float(x[index]), float(mid)
    shift = 0.5 * (left - right) / curvature
    step = x[index + 1] - x[index]
    return float(x[index] + shift * step), float(mid - 0.25 * (left - right) * shift)


def _crossing(x: np.ndarray, y: np.ndarray, inner: int, outer: int, level: float) -> float:
    """Linear interpolation of y = level between samples inner and outer"""
    y0, y1 = y[inner], y[outer]
    if y1 == y0:
        return float(x[outer])
    return float(x[inner] + (level - y0) * (x[outer] - x[inner]) / (y1 - y0))


def curve_fwhm(x: np.ndarray, y: np.ndarray) -> Optional[float]:
    """
    Full width at half maximum around the global maximum.

    Returns:
        Width in the units of x, or None if a half-max crossing is missing
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if y.size < 3:
        return None
    top = int(np.argmax(y))
    half = 0.5 * y[top]
    if half <= 0:
        return None
    below = np.nonzero(y[:top] < half)[0]
    above = np.nonzero(y[top:] < half)[0]
    if below.size == 0 or above.size == 0:
        return None
    lo = int(below[-1])
    hi = top + int(above[0])
    return _crossing(x, y, hi, hi - 1, half) - _crossing(x, y, lo, lo + 1, half)


def _peaks(channel: str, x: np.ndarray, y: np.ndarray, floor: float) -> List[SpectralFeature]:
    top = float(y.max(initial=0.0))
    if top <= 0:
        return []
    indices, _ = find_peaks(y, height=floor * top)
    features = []
    for index in indices:
        location, value = refine_extremum(x, y, int(index))
        features.append(SpectralFeature(FeatureKind.PEAK, channel, location, value=value))
    return features


def _dips(channel: str, x: np.ndarray, y: np.ndarray, floor: float) -> List[SpectralFeature]:
    top = float(y.max(initial=0.0))
    if top <= 0:
        return []
    indices, _ = find_peaks(-y, prominence=floor * top)
    features = []
    for index in indices:
        location, value = refine_extremum(x, y, int(index))
        features.append(SpectralFeature(FeatureKind.DIP, channel, location, value=max(value, 0.0)))
    return features


def bandgaps(
    x: np.ndarray,
    transmitted: np.ndarray,
    incoming: np.ndarray,
    threshold: float = 0.01,
    input_floor: float = 1e-3,
) -> List[SpectralFeature]:
    """Contiguous windows where transmitted/input density stays below threshold"""
    valid = (incoming > 0) & (incoming >= input_floor * incoming.max(initial=0.0))
    ratio = np.zeros_like(transmitted)
    np.divide(transmitted, incoming, out=ratio, where=valid)
    inside = valid & (ratio < threshold)

    features = []
    index = 0
    while index < inside.size:
        if not inside[index]:
            index += 1
            continue
        start = index
        while index + 1 < inside.size and inside[index + 1]:
            index += 1
        stop = index
        lo = _crossing(x, ratio, start, start - 1, threshold) if start > 0 and valid[start - 1] else float(x[start])
        hi = _crossing(x, ratio, stop, stop + 1, threshold) if stop + 1 < x.size and valid[stop + 1] else float(x[stop])
        features.append(
            SpectralFeature(
                FeatureKind.BANDGAP,
                "transmitted",
                location=0.5 * (lo + hi),
                width=hi - lo,
                bounds=(lo, hi),
                threshold=threshold,
                value=float(ratio[start:stop + 1].min()),
            )
        )
        index += 1
    return features


def spectral_features(
    spectra: SpectralSolution,
    thresholds: Optional[FeatureThresholds] = None,
) -> List[SpectralFeature]:
    """
    Locate peaks, dips, half-max widths and bandgaps.

    Locations are detunings in units of Delta; widths are in units of Delta v_g.

    Args:
        spectra: Spectral solution with outgoing spectra
        thresholds: Detection thresholds (defaults: FeatureThresholds())

    Returns:
        Features ordered by channel (input, reflected, transmitted), then kind,
        then location; empty when nothing is found
    """
    thresholds = thresholds or FeatureThresholds()
    x = spectra.grid.samples / spectra.grid.width
    channels = [
        ("input", spectra.input_density),
        ("reflected", spectra.reflected_density),
        ("transmitted", spectra.transmitted_density),
    ]

    features: List[SpectralFeature] = []
    for channel, density in channels:
        features.extend(_peaks(channel, x, density, thresholds.peak_floor))
        if channel != "input":
            features.extend(_dips(channel, x, density, thresholds.peak_floor))
        width = curve_fwhm(x, density)
        if width is not None:
            top = int(np.argmax(density))
            features.append(
                SpectralFeature(FeatureKind.FWHM, channel, float(x[top]), width=width, value=float(density[top]))
            )
    features.extend(
        bandgaps(
            x,
            spectra.transmitted_density,
            spectra.input_density,
            thresholds.bandgap,
            thresholds.input_floor,
        )
    )
    logger.debug(f"Located {len(features)} spectral features")
    return features


def select(features: List[SpectralFeature], kind: FeatureKind, channel: Optional[str] = None) -> List[SpectralFeature]:
    """Filter features by kind and optionally channel, ordered by location"""
    chosen = [f for f in features if f.kind == kind and (channel is None or f.channel == channel)]
    return sorted(chosen, key=lambda f: f.location)
