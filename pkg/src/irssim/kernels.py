"""Hot per-point kernels: deterministic and Monte Carlo association grids.

Each kernel exists twice: a numba @njit version (default) and a pure-numpy
fallback (SIM_BACKEND=numpy). Both consume the same counter-based
splitmix64 stream, so fading draws are bit-identical across backends and
independent of point evaluation order; per-point substreams are derived
from (seed, point index).
"""

from __future__ import annotations

import numpy as np

from .backend import HAVE_NUMBA, apply_thread_cap, resolve_backend

U64 = np.uint64
_GOLD = U64(0x9E3779B97F4A7C15)
_MIX1 = U64(0xBF58476D1CE4E5B9)
_MIX2 = U64(0x94D049BB133111EB)
_INV53 = 2.0 ** -53


def _mix64(z):
    # splitmix64 finalizer; uint64 wraparound is intended
    z = (z ^ (z >> U64(30))) * _MIX1
    z = (z ^ (z >> U64(27))) * _MIX2
    return z ^ (z >> U64(31))


def point_key(seed: int, substream: int):
    """Stream key for one evaluation point."""
    with np.errstate(over="ignore"):
        return _mix64(U64(seed & 0xFFFFFFFFFFFFFFFF) + _GOLD * U64(substream + 1))


def stream_uniforms(seed: int, substream: int, lane: int, count: int) -> np.ndarray:
    """`count` uniforms in (0, 1) from one point's lane of the stream.

    Lane 0 feeds the serving-link fading, lane 1 the macro link. The
    half-ulp offset keeps u strictly inside (0, 1) so -log(u) is finite
    and positive.
    """
    key = point_key(seed, substream)
    ks = np.arange(count, dtype=np.uint64)
    with np.errstate(over="ignore"):
        raw = _mix64(key + _GOLD * (U64(2) * ks + U64(lane + 1)))
    return ((raw >> U64(11)).astype(np.float64) + 0.5) * _INV53


# ---------------------------------------------------------------------------
# numpy fallback implementations
# ---------------------------------------------------------------------------

def _assoc_det_numpy(d_srv, d_mac, k_srv, a_srv, k_mac, a_mac, dens_ratio, expo):
    p_srv = k_srv / d_srv ** a_srv
    p_mac = k_mac / d_mac ** a_mac
    return 1.0 / (1.0 + dens_ratio * (p_mac / p_srv) ** expo)


def _assoc_mc_numpy(d_srv, d_mac, k_srv, a_srv, k_mac, a_mac, dens_ratio, expo,
                    samples, seed, fade_serving, substream0):
    base = (k_mac / d_mac ** a_mac) / (k_srv / d_srv ** a_srv)
    out = np.empty(d_srv.shape[0])
    for i in range(d_srv.shape[0]):
        h_mac = -np.log(stream_uniforms(seed, substream0 + i, 1, samples))
        ratio = base[i] * h_mac
        if fade_serving:
            ratio = ratio / -np.log(stream_uniforms(seed, substream0 + i, 0, samples))
        out[i] = np.mean(1.0 / (1.0 + dens_ratio * ratio ** expo))
    return out


# ---------------------------------------------------------------------------
# numba implementations (same math, explicit loops)
# ---------------------------------------------------------------------------

if HAVE_NUMBA:
    from numba import njit, prange

    _mix64_nb = njit(cache=True)(_mix64)

    @njit(cache=True, parallel=True)
    def _assoc_det_numba(d_srv, d_mac, k_srv, a_srv, k_mac, a_mac, dens_ratio, expo):
        n = d_srv.shape[0]
        out = np.empty(n)
        for i in prange(n):
            p_srv = k_srv / d_srv[i] ** a_srv
            p_mac = k_mac / d_mac[i] ** a_mac
            out[i] = 1.0 / (1.0 + dens_ratio * (p_mac / p_srv) ** expo)
        return out

    @njit(cache=True, parallel=True)
    def _assoc_mc_numba(d_srv, d_mac, k_srv, a_srv, k_mac, a_mac, dens_ratio, expo,
                        samples, seed, fade_serving, substream0):
        n = d_srv.shape[0]
        out = np.empty(n)
        for i in prange(n):
            key = _mix64_nb(seed + _GOLD * U64(substream0 + i + 1))
            base = (k_mac / d_mac[i] ** a_mac) / (k_srv / d_srv[i] ** a_srv)
            acc = 0.0
            for k in range(samples):
                x_mac = _mix64_nb(key + _GOLD * U64(2 * k + 2))
                h_mac = -np.log((np.float64(x_mac >> U64(11)) + 0.5) * _INV53)
                ratio = base * h_mac
                if fade_serving:
                    x_srv = _mix64_nb(key + _GOLD * U64(2 * k + 1))
                    h_srv = -np.log((np.float64(x_srv >> U64(11)) + 0.5) * _INV53)
                    ratio = ratio / h_srv
                acc += 1.0 / (1.0 + dens_ratio * ratio ** expo)
            out[i] = acc / samples
        return out


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def assoc_deterministic(d_srv, d_mac, k_srv, a_srv, k_mac, a_mac, dens_ratio, expo,
                        backend: str | None = None) -> np.ndarray:
    """Association probability per point, unit fading on both tiers."""
    d_srv = np.ascontiguousarray(d_srv, dtype=np.float64)
    d_mac = np.ascontiguousarray(d_mac, dtype=np.float64)
    if resolve_backend(backend) == "numba":
        apply_thread_cap()
        return _assoc_det_numba(d_srv, d_mac, k_srv, a_srv, k_mac, a_mac,
                                dens_ratio, expo)
    return _assoc_det_numpy(d_srv, d_mac, k_srv, a_srv, k_mac, a_mac,
                            dens_ratio, expo)


def assoc_monte_carlo(d_srv, d_mac, k_srv, a_srv, k_mac, a_mac, dens_ratio, expo,
                      samples: int, seed: int, fade_serving: bool,
                      substream0: int = 0, backend: str | None = None) -> np.ndarray:
    """Mean association probability per point over exponential fading draws.

    The serving link is faded only when `fade_serving` is set (the cascaded
    panel model carries no fading term); the macro link is always faded,
    with draws independent of the serving link's.
    """
    d_srv = np.ascontiguousarray(d_srv, dtype=np.float64)
    d_mac = np.ascontiguousarray(d_mac, dtype=np.float64)
    if resolve_backend(backend) == "numba":
        apply_thread_cap()
        return _assoc_mc_numba(d_srv, d_mac, k_srv, a_srv, k_mac, a_mac,
                               dens_ratio, expo, samples,
                               U64(seed & 0xFFFFFFFFFFFFFFFF), fade_serving,
                               substream0)
    return _assoc_mc_numpy(d_srv, d_mac, k_srv, a_srv, k_mac, a_mac,
                           dens_ratio, expo, samples, seed, fade_serving,
                           substream0)
