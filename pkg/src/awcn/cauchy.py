"""Centered Cauchy distribution primitives.

The noise model used everywhere in this package is the centered Cauchy law
with scale parameter lambda > 0:

    pdf  f(z) = (lam / pi) / (lam**2 + z**2)
    cdf  F(z) = arctan(z / lam) / pi + 1/2
    h(Z) = log(4 * pi * lam)   [nats]

Two structural properties carry the rest of the package:

* ratio representation: Z = U / V with U ~ N(0, lam**2), V ~ N(0, 1)
  independent, which is also how samples are drawn here;
* stability under linear combination: sum_i a_i Z_i is centered Cauchy with
  scale sum_i |a_i| * lam_i.

All entropies are in nats.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "CauchyParam",
    "RandomStream",
    "cauchy_pdf",
    "cauchy_cdf",
    "cauchy_entropy",
    "cauchy_sample",
    "sample_cauchy",
    "combine_scales",
]


@dataclass(frozen=True)
class CauchyParam:
    """Scale parameter of a centered Cauchy law (same units as amplitude)."""

    lam: float

    def __post_init__(self):
        if not (np.isfinite(self.lam) and self.lam > 0):
            raise ValueError(f"Cauchy scale must be positive and finite, got {self.lam}")


@dataclass(frozen=True)
class RandomStream:
    """Deterministic random stream: (seed, stream_id) fixes the sample path.

    Substreams with distinct stream_id are statistically independent, so grid
    sweeps and Monte Carlo cells can be evaluated in any order (or in
    parallel) with reproducible results.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        if not (0 <= int(self.seed) < 2**64):
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if int(self.stream_id) < 0:
            raise ValueError(f"stream_id must be non-negative, got {self.stream_id}")

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(int(self.seed), spawn_key=(int(self.stream_id),))
        return np.random.Generator(np.random.PCG64(seq))

    def substream(self, offset: int) -> "RandomStream":
        return RandomStream(self.seed, self.stream_id + offset)


def cauchy_pdf(z, p: CauchyParam):
    """Density (lam/pi) / (lam**2 + z**2); symmetric, integrates to 1."""
    z = np.asarray(z, dtype=float)
    return (p.lam / np.pi) / (p.lam**2 + z * z)


def cauchy_cdf(z, p: CauchyParam):
    """CDF arctan(z/lam)/pi + 1/2.

    Monotone, F(0) = 1/2, F(-z) = 1 - F(z); quartiles sit at z = -lam, +lam.
    Handles +-inf arguments exactly (1 and 0).
    """
    z = np.asarray(z, dtype=float)
    return np.arctan2(z, p.lam) / np.pi + 0.5


def cauchy_entropy(p: CauchyParam) -> float:
    """Differential entropy log(4*pi*lam) in nats."""
    return float(np.log(4.0 * np.pi * p.lam))


def sample_cauchy(rng: np.random.Generator, lam: float, size) -> np.ndarray:
    """Draw centered Cauchy variates as the Gaussian ratio U/V.

    U ~ N(0, lam**2) and V ~ N(0, 1) independent.  A draw with V == 0.0 is
    regenerated; the event has probability zero but would divide by zero.
    """
    u = rng.standard_normal(size)
    v = rng.standard_normal(size)
    bad = v == 0.0
    while np.any(bad):
        v[bad] = rng.standard_normal(int(np.count_nonzero(bad)))
        bad = v == 0.0
    return lam * u / v


def cauchy_sample(n: int, p: CauchyParam, rs: RandomStream) -> np.ndarray:
    """n i.i.d. centered Cauchy samples with scale p.lam, deterministic per rs."""
    if n < 1:
        raise ValueError(f"empty sample request: n must be >= 1, got {n}")
    return sample_cauchy(rs.generator(), p.lam, int(n))


def combine_scales(coeffs, scales) -> float:
    """Scale of sum_i a_i Z_i for independent centered Cauchy Z_i: sum |a_i| lam_i."""
    a = np.asarray(coeffs, dtype=float)
    lam = np.asarray(scales, dtype=float)
    if a.size == 0:
        raise ValueError("combine_scales needs at least one term")
    if a.shape != lam.shape:
        raise ValueError(f"length mismatch: {a.shape} coefficients vs {lam.shape} scales")
    if np.any(lam <= 0):
        raise ValueError("all scales must be positive")
    return float(np.abs(a) @ lam)
