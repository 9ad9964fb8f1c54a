"""Monte-Carlo comparison of ambient multipath against an ideally phased RIS.

Every sample draws one transmitter/receiver pair from its own counter-based
random stream keyed by ``(seed, index)``, so a sample never depends on the
batch it was computed in or on the number of workers. The same placement
feeds the room channel and the RIS channel.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import NamedTuple

import numpy as np

from risroom.materials import CarrierConfig, Material
from risroom.numerics import CdfTable, empirical_cdf
from risroom.propagation import Point2D
from risroom.ris import MU0, RisGeometry, cophased_gain, ris_channel, ris_channel_vectors, quantize_phases
from risroom.ris import cophasing_phases
from risroom.room import RoomGeometry, room_channel

AMBIENT_MODES = ("coherent", "power_sum")


@dataclass(frozen=True)
class StudyConfig:
    room: RoomGeometry
    material: Material
    carrier: CarrierConfig = field(default_factory=CarrierConfig)
    M: int = 3
    samples: int = 2000
    seed: int = 0
    ambient_mode: str = "both"
    ris_sizes: tuple = ()
    pitch: float | None = None  # default lambda_c / 2
    wall_standoff: float | None = None  # default lambda_c
    ris_center: float = 0.0
    phase_bits: int | None = None  # None: ideal continuous phases

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.M < 1:
            raise ValueError("M must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.ambient_mode not in ("coherent", "power_sum", "both"):
            raise ValueError(f"ambient_mode must be coherent, power_sum or both, got {self.ambient_mode!r}")
        object.__setattr__(self, "ris_sizes", tuple(float(L) for L in self.ris_sizes))
        for L in self.ris_sizes:
            if not 0 < L <= self.room.W:
                raise ValueError(f"RIS size {L} m must satisfy 0 < L <= W = {self.room.W} m")
        if self.pitch is not None and self.pitch <= 0:
            raise ValueError("pitch must be positive")
        if self.wall_standoff is not None and self.wall_standoff < 0:
            raise ValueError("wall_standoff must be nonnegative")
        if self.phase_bits is not None and self.phase_bits < 1:
            raise ValueError("phase_bits must be >= 1")

    @property
    def pitch_m(self):
        return self.carrier.lambda_c / 2 if self.pitch is None else self.pitch

    @property
    def standoff_m(self):
        return self.carrier.lambda_c if self.wall_standoff is None else self.wall_standoff

    @property
    def modes(self):
        return AMBIENT_MODES if self.ambient_mode == "both" else (self.ambient_mode,)

    def canonical(self):
        """Plain-data view with defaults resolved, for hashing and manifests."""
        d = asdict(self)
        d["material"] = {
            "name": self.material.name,
            "n": [self.material.n.real, self.material.n.imag],
            "eps_r": [self.material.eps_r.real, self.material.eps_r.imag],
            "mu_r": [self.material.mu_r.real, self.material.mu_r.imag],
        }
        d["pitch"] = self.pitch_m
        d["wall_standoff"] = self.standoff_m
        d["ris_sizes"] = list(self.ris_sizes)
        return d


class PlacementPair(NamedTuple):
    tx: Point2D
    rx: Point2D


@dataclass(frozen=True)
class EquivalentSize:
    length: float
    status: str  # "ok", "saturated" (censored at W) or "degenerate" (zero target)


@dataclass(frozen=True)
class SampleResult:
    index: int
    placement: PlacementPair
    gain_coherent: float
    gain_power_sum: float
    ris_gains: tuple
    sizes: dict


@dataclass(frozen=True)
class SizeDistribution:
    table: CdfTable
    saturated: int
    degenerate: int


def _sample_stream(seed, index):
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, index, 0]))


def placement(config, index):
    """The ``index``-th transmitter/receiver pair, independent of any other draw."""
    lam = config.carrier.lambda_c
    margin = config.standoff_m
    half = 0.5 * config.room.W
    x_lo, x_hi = -half + margin, half - margin
    z_lo, z_hi = margin, config.room.depth - margin
    if not (x_lo < x_hi and z_lo < z_hi):
        raise ValueError("admissible placement region is empty for this standoff")
    rng = _sample_stream(config.seed, index)
    for _ in range(10_000):
        tx = rng.uniform([x_lo, z_lo], [x_hi, z_hi])
        rx = rng.uniform([x_lo, z_lo], [x_hi, z_hi])
        if math.hypot(*(tx - rx)) >= lam:
            return PlacementPair(Point2D(float(tx[0]), float(tx[1])), Point2D(float(rx[0]), float(rx[1])))
    raise ValueError("could not place a transmitter/receiver pair one wavelength apart")


def sample_placements(config, count=None, start=0):
    count = config.samples if count is None else count
    return [placement(config, i) for i in range(start, start + count)]


def _ris(config, L):
    return RisGeometry(L, config.pitch_m, config.ris_center)


def ris_gain(config, pair, L):
    """kappa-normalized optimal RIS power gain for one placement and aperture."""
    ris = _ris(config, L)
    if config.phase_bits is None:
        return cophased_gain(pair.rx, pair.tx, ris, config.carrier)
    v = ris_channel_vectors(pair.rx, pair.tx, ris, config.carrier)
    phases = quantize_phases(cophasing_phases(v), config.phase_bits)
    return abs(ris_channel(pair.rx, pair.tx, ris, phases, config.carrier)) ** 2 * MU0**2


def equivalent_ris_size(tx, rx, target_gain, config):
    """Smallest aperture whose optimal RIS gain reaches ``target_gain``.

    Brackets by doubling from one wavelength, then bisects to lambda_c / 10.
    """
    if target_gain < 0:
        raise ValueError("target gain must be nonnegative")
    W = config.room.W
    if target_gain == 0:
        return EquivalentSize(0.0, "degenerate")
    pair = PlacementPair(tx, rx)
    lam = config.carrier.lambda_c
    lo, hi = 0.0, min(lam, W)
    while ris_gain(config, pair, hi) < target_gain:
        if hi >= W:
            return EquivalentSize(W, "saturated")
        lo, hi = hi, min(2 * hi, W)
    resolution = lam / 10
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if ris_gain(config, pair, mid) >= target_gain:
            hi = mid
        else:
            lo = mid
    return EquivalentSize(hi, "ok")


def evaluate_sample(config, index, sizes=True):
    pair = placement(config, index)
    ch = room_channel(
        pair.rx, pair.tx, config.room, config.material, config.carrier, config.M, config.standoff_m
    )
    ris_gains = tuple(ris_gain(config, pair, L) for L in config.ris_sizes)
    found = {}
    if sizes:
        targets = {"coherent": ch.gain_coherent, "power_sum": ch.gain_power_sum}
        for mode in config.modes:
            found[mode] = equivalent_ris_size(pair.tx, pair.rx, targets[mode], config)
    return SampleResult(index, pair, ch.gain_coherent, ch.gain_power_sum, ris_gains, found)


def _evaluate_chunk(args):
    config, indices, sizes = args
    return [evaluate_sample(config, i, sizes) for i in indices]


def run_samples(config, workers=1, sizes=True):
    """Evaluate every sample, in index order; ``workers`` never changes results."""
    indices = range(config.samples)
    if workers <= 1:
        return _evaluate_chunk((config, indices, sizes))
    chunk = max(1, math.ceil(config.samples / (4 * workers)))
    jobs = [(config, indices[i : i + chunk], sizes) for i in range(0, config.samples, chunk)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return [r for part in pool.map(_evaluate_chunk, jobs) for r in part]


def _db(g):
    return 10.0 * math.log10(g)


def ambient_tables(results, modes=AMBIENT_MODES):
    pick = {"coherent": lambda r: r.gain_coherent, "power_sum": lambda r: r.gain_power_sum}
    return {m: empirical_cdf([_db(pick[m](r)) for r in results], "dB") for m in modes}


def ris_tables(results, ris_sizes):
    return {L: empirical_cdf([_db(r.ris_gains[i]) for r in results], "dB") for i, L in enumerate(ris_sizes)}


def size_tables(results, modes):
    out = {}
    for m in modes:
        sizes = [r.sizes[m] for r in results]
        out[m] = SizeDistribution(
            empirical_cdf([s.length for s in sizes], "meters"),
            saturated=sum(s.status == "saturated" for s in sizes),
            degenerate=sum(s.status == "degenerate" for s in sizes),
        )
    return out


def ambient_cdf(config, workers=1):
    """CDF (dB) of the ambient power gain, one table per requested mode."""
    return ambient_tables(run_samples(config, workers, sizes=False), config.modes)


def ris_gain_cdf(config, workers=1):
    """CDF (dB) of the normalized optimal RIS gain for every configured aperture."""
    if not config.ris_sizes:
        raise ValueError("config lists no RIS sizes")
    return ris_tables(run_samples(config, workers, sizes=False), config.ris_sizes)


def equivalent_size_cdf(config, workers=1):
    """CDF (m) of the RIS size matching the ambient gain, per ambient mode."""
    return size_tables(run_samples(config, workers, sizes=True), config.modes)
