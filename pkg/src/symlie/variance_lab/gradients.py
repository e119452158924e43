"""Loss and gradients for the parity-observable classifier.

The prediction for a state is <Z^(x)n> after the ansatz; the loss is the
mean squared error against labels.  Gradients come from the parameter-shift
rule: every parametrized gate here is exp(-i*theta/2 * G) with G^2 = 1, so
each occurrence of a shared slot contributes (l(+pi/2) - l(-pi/2)) / 2 and
the occurrences are summed.  A central finite difference of the loss serves
as the independent cross-check.
"""

from __future__ import annotations

import math
from typing import Sequence, Tuple

import numpy as np

from .simulator import Circuit, StateVector, _parity_batch, _run_batch

__all__ = ["mse_loss", "predictions", "gradient", "gradient_finite_difference",
           "stack_dataset"]

Dataset = Sequence[Tuple[StateVector, float]]


def stack_dataset(dataset: Dataset) -> Tuple[np.ndarray, np.ndarray]:
    """Batch a list of (state, label) pairs into (amplitudes, labels) arrays."""
    if not dataset:
        raise ValueError("dataset is empty")
    amps = np.stack([sv.amplitudes for sv, _ in dataset])
    labels = np.array([label for _, label in dataset], dtype=np.float64)
    return amps, labels


def _batch_predictions(circuit: Circuit, params: Sequence[float], amps: np.ndarray,
                       overrides=None) -> np.ndarray:
    out = _run_batch(circuit, params, amps, overrides)
    return _parity_batch(out, circuit.n_qubits)


def predictions(circuit: Circuit, params: Sequence[float], dataset: Dataset) -> np.ndarray:
    amps, _ = stack_dataset(dataset)
    return _batch_predictions(circuit, params, amps)


def mse_loss(circuit: Circuit, params: Sequence[float], dataset: Dataset) -> float:
    """Mean over the dataset of (prediction - label)^2; bounded by [0, 4]
    for labels in {-1, +1}."""
    amps, labels = stack_dataset(dataset)
    preds = _batch_predictions(circuit, params, amps)
    return float(np.mean((preds - labels) ** 2))


def _loss_gradient_from_arrays(circuit: Circuit, params: Sequence[float],
                               amps: np.ndarray, labels: np.ndarray,
                               slot: int) -> float:
    # One shifted pair per occurrence of the shared slot.  The state before
    # each occurrence is advanced incrementally and reused, so every shifted
    # evaluation only re-simulates the circuit suffix.
    n = circuit.n_qubits
    shift = math.pi / 2
    total = len(circuit.gates)
    pred_grad = np.zeros(amps.shape[0])
    prefix = amps
    cursor = 0
    for gi, k in circuit.slot_occurrences(slot):
        if gi > cursor:
            prefix = _run_batch(circuit, params, prefix, start=cursor, stop=gi)
            cursor = gi
        for sign in (1.0, -1.0):
            out = _run_batch(circuit, params, prefix, {(gi, k): sign * shift},
                             start=cursor, stop=total)
            pred_grad += 0.5 * sign * _parity_batch(out, n)
    base_out = _run_batch(circuit, params, prefix, start=cursor, stop=total)
    base = _parity_batch(base_out, n)
    return float(np.mean(2.0 * (base - labels) * pred_grad))


def gradient(circuit: Circuit, params: Sequence[float], dataset: Dataset,
             slot: int) -> float:
    """d(mse_loss)/d(theta_slot) by the parameter-shift rule."""
    amps, labels = stack_dataset(dataset)
    return _loss_gradient_from_arrays(circuit, params, amps, labels, slot)


def gradient_finite_difference(circuit: Circuit, params: Sequence[float],
                               dataset: Dataset, slot: int, h: float = 1e-5) -> float:
    """Central finite difference of the loss in the slot parameter."""
    shifted = np.array(params, dtype=np.float64)
    shifted[slot] += h
    plus = mse_loss(circuit, shifted, dataset)
    shifted[slot] -= 2 * h
    minus = mse_loss(circuit, shifted, dataset)
    return (plus - minus) / (2 * h)
