"""Ingest, synthesise, group, clean, normalise and window flight data."""

from adsb_sentinel.data.errors import DataError, SchemaError, ZeroVarianceError
from adsb_sentinel.data.flights import GAP_SPLIT_SECONDS, clean, group_flights
from adsb_sentinel.data.ingest import IngestResult, ingest_csv, write_flights_csv
from adsb_sentinel.data.normalize import (
    NormalizationStats,
    apply_normalizer,
    denormalize,
    fit_normalizer,
)
from adsb_sentinel.data.records import (
    FEATURE_INDEX,
    FEATURES,
    FlightSequence,
    StateVector,
    wrap_heading,
)
from adsb_sentinel.data.synth import SynthProfile, synthesize_flight, synthesize_flights
from adsb_sentinel.data.windows import (
    FeatureWindow,
    build_forecast_windows,
    normalize_windows,
    stack_windows,
    window,
)

__all__ = [
    "FEATURES",
    "FEATURE_INDEX",
    "StateVector",
    "FlightSequence",
    "wrap_heading",
    "IngestResult",
    "ingest_csv",
    "write_flights_csv",
    "GAP_SPLIT_SECONDS",
    "group_flights",
    "clean",
    "NormalizationStats",
    "fit_normalizer",
    "apply_normalizer",
    "denormalize",
    "FeatureWindow",
    "window",
    "build_forecast_windows",
    "normalize_windows",
    "stack_windows",
    "SynthProfile",
    "synthesize_flight",
    "synthesize_flights",
    "DataError",
    "SchemaError",
    "ZeroVarianceError",
]
