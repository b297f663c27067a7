"""Projected Riemannian gradient descent on tuples of unitary matrices.

Shared engine for the representation-variety flow and the lattice
Yang-Mills flow.  The energy is a sum of squared word defects
``sum_w ||prod(w) - I||_F^2``; steps follow the left-translated
skew projection of the Euclidean gradient, retract by polar projection
and accept via Armijo backtracking, so the energy trace is non-increasing
by construction.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from .errors import NonConvergenceError
from .presentations import multiword_energy, multiword_gradients
from .unitary import polar_project, skew_part

ARMIJO_C = 1e-4
ARMIJO_SHRINK = 0.5
INITIAL_STEP = 1.0
MIN_STEP = 1e-18


def riemannian_gradients(mats: Sequence[np.ndarray], egrads) -> list[np.ndarray]:
    """Left-translated skew projections of Euclidean gradients."""
    return [u @ skew_part(u.conj().T @ g) for u, g in zip(mats, egrads)]


def descend_words(
    mats: list[np.ndarray],
    words: list,
    tol: float,
    max_iter: int,
    progress: Callable[[int, float], None] | None = None,
):
    """Minimize the summed word energy until sqrt(energy) <= tol.

    Returns ``(mats, iterations, energy_trace)`` for the first iterate at
    or below tolerance.  Raises :class:`NonConvergenceError` carrying the
    best iterate when the budget runs out or the line search stalls.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    m = len(mats)
    energy = multiword_energy(words, mats)
    trace = [energy]
    target = tol * tol
    if energy <= target:
        return mats, 0, trace
    for it in range(1, max_iter + 1):
        egrads = multiword_gradients(words, mats, m)
        rgrads = riemannian_gradients(mats, egrads)
        gnorm2 = sum(float(np.vdot(g, g).real) for g in rgrads)
        if gnorm2 < 1e-60:
            break
        step = INITIAL_STEP
        accepted = None
        while step >= MIN_STEP:
            trial = [polar_project(u - step * g) for u, g in zip(mats, rgrads)]
            trial_energy = multiword_energy(words, trial)
            if trial_energy <= energy - ARMIJO_C * step * gnorm2:
                accepted = (trial, trial_energy)
                break
            step *= ARMIJO_SHRINK
        if accepted is None:
            break
        mats, energy = accepted
        trace.append(energy)
        if progress is not None:
            progress(it, energy)
        if energy <= target:
            return mats, it, trace
    raise NonConvergenceError(
        f"flow stalled at residual {math.sqrt(max(trace[-1], 0.0)):.3e} "
        f"(target {tol:.1e}) after {len(trace) - 1} accepted steps",
        best=mats,
        report=(len(trace) - 1, trace),
    )
