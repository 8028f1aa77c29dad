"""Decoding metrics and two-codeword error probabilities under Cauchy noise.

Two per-symbol decoding metrics are compared throughout:

    nearest-neighbor (ML for Gaussian noise):   (y - x)**2
    Cauchy ML ("bent" metric):                  log[1 + ((y - x)/lam)**2]

The bent metric is quadratic for small residuals and logarithmic for large
ones, which immunizes it against the huge noise samples a Cauchy channel
produces.  Nearest-neighbor decoding between two codewords on the Cauchy
channel errs with the exact probability

    eps = 1/2 - arctan( mean_sq_diff / (2*lam*mean_abs_diff) ) / pi,

because the decision statistic is itself Cauchy; under random coding this
converges (law of large numbers) to a strictly positive limit, so no rate is
achievable with nearest-neighbor decoding.  Monte Carlo harnesses here
simulate both decoders directly; all ties count as half an error.
"""

from dataclasses import dataclass

import numpy as np

from .cauchy import RandomStream, sample_cauchy

__all__ = [
    "CodewordPair",
    "EnsembleSpec",
    "McEstimate",
    "awcn_ml_metric",
    "nn_metric",
    "nn_two_codeword_error",
    "nn_error_limit",
    "nn_error_mc",
    "nn_error_mc_fixed_pair",
    "ml_two_codeword_mc",
]

ENSEMBLE_KINDS = ("gaussian", "antipodal")

# cap on elements of one simulated noise block (trials_chunk x block_len)
_CHUNK_ELEMS = 1 << 23


@dataclass(frozen=True)
class CodewordPair:
    """Two length-N real codewords; difference statistics are recomputed."""

    x1: np.ndarray
    x2: np.ndarray

    def __post_init__(self):
        x1 = np.atleast_1d(np.asarray(self.x1, dtype=float))
        x2 = np.atleast_1d(np.asarray(self.x2, dtype=float))
        object.__setattr__(self, "x1", x1)
        object.__setattr__(self, "x2", x2)
        if x1.shape != x2.shape or x1.ndim != 1 or x1.size < 1:
            raise ValueError("codewords must be equal-length 1-D vectors, N >= 1")

    @property
    def block_len(self) -> int:
        return self.x1.size

    @property
    def diff(self) -> np.ndarray:
        return self.x2 - self.x1

    @property
    def mean_sq_diff(self) -> float:
        d = self.diff
        return float(d @ d) / d.size

    @property
    def mean_abs_diff(self) -> float:
        return float(np.abs(self.diff).mean())


@dataclass(frozen=True)
class EnsembleSpec:
    """Random-coding ensemble for two-codeword Monte Carlo runs."""

    kind: str
    power: float
    block_len: int
    pairs: int
    rs: RandomStream

    def __post_init__(self):
        if self.kind not in ENSEMBLE_KINDS:
            raise ValueError(f"kind must be one of {ENSEMBLE_KINDS}, got {self.kind!r}")
        if not (np.isfinite(self.power) and self.power > 0):
            raise ValueError(f"power must be positive, got {self.power}")
        if self.block_len < 1:
            raise ValueError(f"block_len must be >= 1, got {self.block_len}")
        if self.pairs < 1:
            raise ValueError(f"pairs must be >= 1, got {self.pairs}")


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo error-rate estimate with its binomial standard error."""

    value: float
    std_error: float
    trials: int


def awcn_ml_metric(x, y, lam: float):
    """Per-symbol Cauchy ML metric log[1 + ((y-x)/lam)**2]; 0 iff y == x."""
    if lam <= 0:
        raise ValueError(f"lam must be positive, got {lam}")
    r = (np.asarray(y, dtype=float) - np.asarray(x, dtype=float)) / lam
    return np.log1p(r * r)


def nn_metric(x, y):
    """Per-symbol squared Euclidean distance (y - x)**2."""
    r = np.asarray(y, dtype=float) - np.asarray(x, dtype=float)
    return r * r


def nn_two_codeword_error(pair: CodewordPair, lam: float) -> float:
    """Exact nearest-neighbor error probability between two codewords.

    The decision statistic (1/N) sum d_n z_n is Cauchy with scale
    (lam/N) sum |d_n|, so the error probability is its tail beyond
    (1/2N) sum d_n^2.  Undefined for identical codewords.
    """
    if lam <= 0:
        raise ValueError(f"lam must be positive, got {lam}")
    mad = pair.mean_abs_diff
    if mad == 0.0:
        raise ValueError("identical codewords: two-codeword error is undefined")
    ratio = pair.mean_sq_diff / (2.0 * lam * mad)
    return 0.5 - float(np.arctan(ratio)) / np.pi


def nn_error_limit(kind: str, power: float, lam: float) -> float:
    """Large-N limit of the random-coding two-codeword NN error probability.

    gaussian symbols:   1/2 - arctan( sqrt(pi*P/lam^2) / 2 ) / pi
    antipodal symbols:  1/2 - arctan( sqrt(P/lam^2) ) / pi

    Both are bounded away from zero for finite P/lam^2.
    """
    if kind not in ENSEMBLE_KINDS:
        raise ValueError(f"kind must be one of {ENSEMBLE_KINDS}, got {kind!r}")
    if lam <= 0 or power < 0:
        raise ValueError("need lam > 0 and power >= 0")
    gamma = power / lam**2
    if kind == "gaussian":
        arg = 0.5 * np.sqrt(np.pi * gamma)
    else:
        arg = np.sqrt(gamma)
    return 0.5 - float(np.arctan(arg)) / np.pi


def _draw_pair(kind: str, power: float, n: int, rng: np.random.Generator):
    root_p = np.sqrt(power)
    if kind == "gaussian":
        return root_p * rng.standard_normal(n), root_p * rng.standard_normal(n)
    signs1 = np.where(rng.random(n) < 0.5, -1.0, 1.0)
    signs2 = np.where(rng.random(n) < 0.5, -1.0, 1.0)
    return root_p * signs1, root_p * signs2


def _nn_errors(d: np.ndarray, z: np.ndarray) -> float:
    # error event: sum d_n z_n > 0.5 sum d_n^2 (ties count 1/2)
    t = z @ d
    thr = 0.5 * float(d @ d)
    return float(np.count_nonzero(t > thr)) + 0.5 * float(np.count_nonzero(t == thr))


def _ml_errors(d: np.ndarray, z: np.ndarray, lam: float) -> float:
    # transmitted codeword scores sum log1p((z/lam)^2); the competitor sees z - d
    zl = z / lam
    m1 = np.log1p(zl * zl).sum(axis=1)
    r = (z - d) / lam
    m2 = np.log1p(r * r).sum(axis=1)
    return float(np.count_nonzero(m1 > m2)) + 0.5 * float(np.count_nonzero(m1 == m2))


def _error_mc(spec: EnsembleSpec, lam: float, noise_trials: int, metric: str) -> McEstimate:
    if lam <= 0:
        raise ValueError(f"lam must be positive, got {lam}")
    if noise_trials < 1:
        raise ValueError(f"noise_trials must be >= 1, got {noise_trials}")
    rng = spec.rs.generator()
    n = spec.block_len
    chunk = max(1, _CHUNK_ELEMS // n)
    errors = 0.0
    for _ in range(spec.pairs):
        x1, x2 = _draw_pair(spec.kind, spec.power, n, rng)
        d = x2 - x1
        left = noise_trials
        while left > 0:
            t = min(chunk, left)
            z = sample_cauchy(rng, lam, (t, n))
            if metric == "nn":
                errors += _nn_errors(d, z)
            else:
                errors += _ml_errors(d, z, lam)
            left -= t
    total = spec.pairs * noise_trials
    p_hat = errors / total
    return McEstimate(value=p_hat,
                      std_error=float(np.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / total)),
                      trials=total)


def nn_error_mc(spec: EnsembleSpec, lam: float, noise_trials: int = 1) -> McEstimate:
    """Simulate nearest-neighbor two-codeword decoding over random pairs.

    Each of spec.pairs codeword pairs gets noise_trials independent Cauchy
    noise blocks; the reported rate averages all pairs x trials indicators.
    """
    return _error_mc(spec, lam, noise_trials, "nn")


def ml_two_codeword_mc(spec: EnsembleSpec, lam: float, noise_trials: int = 1) -> McEstimate:
    """Same harness as nn_error_mc but with the bent (Cauchy ML) metric."""
    return _error_mc(spec, lam, noise_trials, "ml")


def nn_error_mc_fixed_pair(pair: CodewordPair, lam: float, trials: int,
                           rs: RandomStream) -> McEstimate:
    """Resample noise over one fixed pair; checks the exact error formula."""
    if lam <= 0:
        raise ValueError(f"lam must be positive, got {lam}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = rs.generator()
    d = pair.diff
    n = pair.block_len
    chunk = max(1, _CHUNK_ELEMS // n)
    errors = 0.0
    left = trials
    while left > 0:
        t = min(chunk, left)
        z = sample_cauchy(rng, lam, (t, n))
        errors += _nn_errors(d, z)
        left -= t
    p_hat = errors / trials
    return McEstimate(value=p_hat,
                      std_error=float(np.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / trials)),
                      trials=trials)
