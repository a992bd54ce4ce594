"""Prediction-parity probing between a native sklearn model and its IR twin.

The IR side is evaluated through the primary engine's public load/predict
API, so a passing probe certifies the whole pipeline: conversion, the IR
schema, and the engine's prediction semantics.
"""

from __future__ import annotations

import json
import logging

import numpy as np

from treelogic import load_model, make_instance, predict

log = logging.getLogger(__name__)


def random_probes(rng: np.random.Generator, n_probes: int, n_features: int,
                  low: float = -2.0, high: float = 12.0) -> np.ndarray:
    return rng.uniform(low, high, size=(n_probes, n_features))


def parity_rate(native, ir_doc: dict, probes: np.ndarray) -> float:
    """Fraction of probes on which native predict and the IR engine agree.

    Disagreements are logged with the native decision margin when the model
    exposes one, so threshold-boundary float ties stay visible.
    """
    model = load_model(json.dumps(ir_doc))
    if probes.shape[1] != model.n_features:
        raise ValueError(f"probe width {probes.shape[1]} does not match the "
                         f"converted model's {model.n_features} features")
    native_labels = np.asarray(native.predict(probes)).astype(int)
    agree = 0
    for row, native_label in zip(probes, native_labels):
        ir_label = predict(model, make_instance([float(v) for v in row])).label
        if ir_label == int(native_label):
            agree += 1
        else:
            margin = ""
            if hasattr(native, "decision_function"):
                margin = f" (native margin {float(native.decision_function([row])[0]):+.6f})"
            log.warning("parity mismatch: native=%s ir=%s at %s%s",
                        int(native_label), ir_label, np.round(row, 4).tolist(), margin)
    return agree / len(probes)
