"""Haar random unitaries.

Random sources are :class:`numpy.random.Generator` instances. For
reproducible families of matrices use :func:`stream`, which maps
``(seed, *index)`` to an independent generator through
``SeedSequence(seed, spawn_key=index)``, the same child that
``SeedSequence(seed).spawn`` would hand out.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .permanent import DimensionError

__all__ = ["stream", "haar_unitary", "first_columns", "unitarity_residual"]


def stream(seed: int, *index: int) -> np.random.Generator:
    """Independent generator for ``index`` under ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(index)))


def haar_unitary(m: int, rng: np.random.Generator) -> np.ndarray:
    """Draw an ``m x m`` unitary from the Haar measure.

    QR-decomposes a matrix of standard complex Gaussians, then rescales
    each column of ``Q`` by the phase of the matching diagonal entry of
    ``R``. Without the phase fix the result is not Haar distributed.
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / np.sqrt(2.0)
    q, r = scipy.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def first_columns(u: np.ndarray, n: int) -> np.ndarray:
    """The ``m x n`` slice made of the first ``n`` columns of ``u``."""
    u = np.asarray(u)
    if not 1 <= n <= u.shape[1]:
        raise DimensionError(f"n={n} outside [1, {u.shape[1]}]")
    return u[:, :n].copy()


def unitarity_residual(u: np.ndarray) -> float:
    """``max |U U^H - I|`` entrywise."""
    u = np.asarray(u)
    return float(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))))
