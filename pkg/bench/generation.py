"""
Random benchmark instances.

Every instance has its own PCG64 stream, seeded with
SeedSequence(seed, spawn_key=(index,)) where index is the position of the
instance in the generated list. Draws happen in a fixed order: processor
powers (uniform distributions only), link bandwidths, computation volumes.
"""
from dataclasses import asdict, dataclass
from itertools import product
import logging

import numpy as np

from core.exceptions import InputValidationError
from core.types import Instance, Platform, Workload

logger = logging.getLogger(__name__)

HOMOGENEOUS = 'homogeneous-100MFLOPS'
UNIFORM = 'uniform-10-100MFLOPS'
POWER_DISTS = (HOMOGENEOUS, UNIFORM)

# FLOP
VOLUME_RANGES = {
    '6GFLOP-4TFLOP': (6e9, 4e12),
    '6-60GFLOP': (6e9, 60e9),
}

# bytes per FLOP
CCR_VALUES = (0.01, 0.05, 0.1, 0.5, 1, 5, 10, 50, 100)

MFLOPS_RANGE = (10.0, 100.0)
BANDWIDTH_RANGE = (10.0, 100.0)  # Mb/s


def _as_tuple(value):
    if isinstance(value, (str, int, float)):
        return (value,)
    return tuple(value)


@dataclass(frozen=True)
class GenConfig:
    """One benchmark grid: every (power, volume range, ccr) combination gets instances_per_combo instances."""
    m: int = 10
    n_loads: int = 50
    power_dists: tuple = POWER_DISTS
    volume_ranges: tuple = tuple(VOLUME_RANGES)
    ccrs: tuple = CCR_VALUES
    instances_per_combo: int = 100
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'power_dists', _as_tuple(self.power_dists))
        object.__setattr__(self, 'volume_ranges', _as_tuple(self.volume_ranges))
        object.__setattr__(self, 'ccrs', tuple(float(c) for c in _as_tuple(self.ccrs)))

        for name in ('m', 'n_loads', 'instances_per_combo'):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 1:
                raise InputValidationError(name, value=value, message='%(field)s must be an integer >= 1 (got %(value)s).')
        if not 0 <= int(self.seed) < 2 ** 64:
            raise InputValidationError('seed', value=self.seed, message='%(field)s must be a 64-bit unsigned integer (got %(value)s).')
        for k, dist in enumerate(self.power_dists, start=1):
            if dist not in POWER_DISTS:
                raise InputValidationError('power_dists', index=k, value=dist)
        for k, name in enumerate(self.volume_ranges, start=1):
            if name not in VOLUME_RANGES:
                raise InputValidationError('volume_ranges', index=k, value=name)
        for k, ccr in enumerate(self.ccrs, start=1):
            if ccr not in CCR_VALUES:
                raise InputValidationError('ccrs', index=k, value=ccr,
                                           message='%(field)s must be one of 0.01 ... 100 (got %(value)s).')
        if not (self.power_dists and self.volume_ranges and self.ccrs):
            raise InputValidationError('grid', value='empty', message='%(field)s has no combination (got %(value)s).')

    @classmethod
    def single(cls, power_dist=UNIFORM, volume_range='6GFLOP-4TFLOP', ccr=1, **kwargs):
        return cls(power_dists=(power_dist,), volume_ranges=(volume_range,), ccrs=(ccr,), **kwargs)

    @classmethod
    def from_dict(cls, data):
        known = {f for f in cls.__dataclass_fields__}
        unknown = sorted(set(data) - known)
        if unknown:
            raise InputValidationError(unknown[0], value='unknown', message='%(field)s is not a generator setting.')
        return cls(**data)

    def to_dict(self):
        data = asdict(self)
        for name in ('power_dists', 'volume_ranges', 'ccrs'):
            data[name] = list(data[name])
        return data

    def combos(self):
        return list(product(self.power_dists, self.volume_ranges, self.ccrs))

    @property
    def n_instances(self):
        return len(self.combos()) * self.instances_per_combo


def instance_rng(seed, index):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed), spawn_key=(int(index),))))


def generate_instance(cfg, index, power_dist, volume_range, ccr):
    rng = instance_rng(cfg.seed, index)
    m = cfg.m

    if power_dist == HOMOGENEOUS:
        mflops = np.full(m, 100.0)
    else:
        mflops = rng.uniform(*MFLOPS_RANGE, size=m)
    bandwidth = rng.uniform(*BANDWIDTH_RANGE, size=m - 1)
    low, high = VOLUME_RANGES[volume_range]
    vcomp = rng.uniform(low, high, size=cfg.n_loads)

    platform = Platform(
        w=1.0 / (mflops * 1e6),           # s/FLOP
        z=8.0 / (bandwidth * 1e6),        # s/byte
        tau=np.zeros(m),
    )
    workload = Workload(tuple((ccr * v, v) for v in vcomp))
    latency = 1e-3 * (BANDWIDTH_RANGE[0] / bandwidth)  # 1 ms at 10 Mb/s
    meta = {
        'index': index,
        'seed': int(cfg.seed),
        'power_dist': power_dist,
        'volume_range': volume_range,
        'ccr': float(ccr),
    }
    return Instance(platform, workload, latency=tuple(latency), meta=meta)


def generate_instances(cfg):
    """All instances of the grid, combination by combination; deterministic in cfg."""
    instances = []
    for combo, (power_dist, volume_range, ccr) in enumerate(cfg.combos()):
        for k in range(cfg.instances_per_combo):
            index = combo * cfg.instances_per_combo + k
            instances.append(generate_instance(cfg, index, power_dist, volume_range, ccr))
    logger.info(f"Generated {len(instances)} instances (m={cfg.m}, {cfg.n_loads} loads, seed {cfg.seed})")
    return instances
