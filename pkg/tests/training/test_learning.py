"""Trained-behaviour checks: tiny models trained long enough to learn something."""

import numpy as np
import pytest

from adsb_sentinel.attacks import AttackKind, AttackSpec, inject
from adsb_sentinel.data import (
    FEATURES,
    FlightSequence,
    StateVector,
    SynthProfile,
    build_forecast_windows,
    normalize_windows,
    stack_windows,
    synthesize_flights,
    window,
)
from adsb_sentinel.training import (
    build_model_from_checkpoint,
    compare_initializations,
    finetune,
    prepare_pretrain_windows,
    pretrain,
)

from .conftest import LENGTH, tiny_train_config

pytestmark = pytest.mark.slow

PERIOD = 6
WAVE_BASE = np.array([50.0, 8.0, 400.0, 180.0, 0.0, 30000.0])
WAVE_AMPLITUDE = np.array([0.05, 0.05, 20.0, 20.0, 500.0, 1000.0])


def weaving_flights(n_flights, seed, n_records=80):
    """Flights whose features all follow one sinusoid with a random phase per flight.

    Last-value persistence is a poor forecaster here, while the next row is a
    fixed linear function of the two rows before it.
    """
    rng = np.random.default_rng(seed)
    flights = []
    for i in range(n_flights):
        t = np.arange(n_records)
        wave = np.sin(2 * np.pi * t / PERIOD + rng.uniform(0.0, 2 * np.pi))
        matrix = WAVE_BASE + np.outer(wave, WAVE_AMPLITUDE)
        callsign = f"WAV{seed:02d}{i:03d}"
        records = tuple(
            StateVector(
                time=1000.0 + 10.0 * k,
                icao24="a0b0c0",
                callsign=callsign,
                **dict(zip(FEATURES, map(float, matrix[k]))),
            )
            for k in range(n_records)
        )
        flights.append(FlightSequence(callsign=callsign, icao24="a0b0c0", records=records))
    return flights


def _mse(predicted, target):
    return float(np.mean((np.asarray(predicted) - np.asarray(target)) ** 2))


def test_pretraining_halves_the_loss_on_straight_line_flights(architecture):
    profile = SynthProfile(min_records=60, max_records=80, turn_probability=0.0)
    stats, windows = prepare_pretrain_windows(
        synthesize_flights(12, seed=11, profile=profile), LENGTH, stride=2
    )
    config = tiny_train_config("pretrain", architecture, epochs=20)
    history = pretrain(config, windows, stats).provenance["train_loss"]
    assert len(history) == 20
    assert history[-1] < 0.5 * history[0]


def test_forecaster_beats_persistence_on_held_out_flights(architecture):
    stats, windows = prepare_pretrain_windows(weaving_flights(16, seed=1), LENGTH, stride=2)
    config = tiny_train_config("pretrain", architecture, epochs=30)
    model = build_model_from_checkpoint(pretrain(config, windows, stats))

    held_out = build_forecast_windows(weaving_flights(6, seed=2), stats, LENGTH, stride=3)
    inputs = stack_windows(held_out)
    targets = np.stack([w.target for w in held_out])
    forecast_mse = _mse(model.forward(inputs).data, targets)
    persistence_mse = _mse(inputs[:, -1, :], targets)
    assert persistence_mse > 0.5
    assert forecast_mse < persistence_mse


def _drifted(flight):
    attacked, _ = inject(flight, AttackSpec(AttackKind.ALTITUDE_DRIFT, 2000.0))
    return attacked


def _labelled_windows(flights, label):
    return [
        w
        for flight in flights
        for w in window(
            flight.to_matrix(), LENGTH, stride=5, flight_id=flight.flight_id, label=label
        )
    ]


def test_separable_altitude_drift_is_learned(flights, pretrained):
    windows = _labelled_windows(map(_drifted, flights[6:12]), 1) + _labelled_windows(
        flights[12:18], 0
    )
    config = tiny_train_config("finetune", "xlstm", classifier="ALT", epochs=15)
    checkpoint = finetune(config, pretrained["xlstm"], windows)
    model = build_model_from_checkpoint(checkpoint)

    normalized = normalize_windows(windows, checkpoint.normalization)
    predicted = model.detect_batch(stack_windows(normalized)) > 0.5
    labels = np.array([w.label for w in windows]) == 1
    tp = int(np.sum(predicted & labels))
    fp = int(np.sum(predicted & ~labels))
    fn = int(np.sum(~predicted & labels))
    assert 2 * tp / (2 * tp + fp + fn) >= 0.95

    held_out = _drifted(flights[20]).to_matrix()[-LENGTH:]
    normalized_window = normalize_windows(
        [window(held_out, LENGTH)[0]], checkpoint.normalization
    )[0]
    assert model.detect(normalized_window.values) > 0.5


def test_pretrained_initialisation_beats_random_in_most_seeds(pretrain_data, altitude_subset):
    stats, windows = pretrain_data
    pretrained = pretrain(tiny_train_config("pretrain", "xlstm", epochs=10), windows, stats)
    config = tiny_train_config("finetune", "xlstm", classifier="ALT", epochs=1)
    results = compare_initializations(
        config, pretrained, altitude_subset.train[:64], altitude_subset.test[:64], range(10)
    )
    assert [r.seed for r in results] == list(range(10))
    assert sum(r.pretrained_wins for r in results) >= 8
