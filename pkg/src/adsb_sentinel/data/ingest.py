"""
State-vector CSV ingestion and export.

The CSV schema follows OpenSky state-vector exports:
``time,icao24,callsign,lat,lon,velocity,heading,vertrate,baroaltitude``.
An empty cell is a missing value. Rows that cannot be parsed are skipped and
counted rather than failing the whole file.
"""

from collections.abc import Iterable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from adsb_sentinel.data.errors import SchemaError
from adsb_sentinel.data.records import FlightSequence, StateVector, wrap_headings
from adsb_sentinel.telemetry import LoggingFacade

logger = LoggingFacade("adsb_sentinel.data.ingest")

COLUMNS = (
    "time",
    "icao24",
    "callsign",
    "lat",
    "lon",
    "velocity",
    "heading",
    "vertrate",
    "baroaltitude",
)
NUMERIC_COLUMNS = ("time", "lat", "lon", "velocity", "heading", "vertrate", "baroaltitude")
UNITS = ("aviation", "metric")

# Metric export units to aviation units.
KNOTS_PER_MPS = 1.943844
FEET_PER_METRE = 3.28084
FPM_PER_MPS = 196.850394


@dataclass
class IngestResult:
    records: list[StateVector] = field(default_factory=list)
    skipped: int = 0


def _read_frame(path: Path) -> pd.DataFrame:
    try:
        return pd.read_csv(
            path,
            dtype={"icao24": str, "callsign": str},
            keep_default_na=False,
            na_values={col: [""] for col in NUMERIC_COLUMNS},
            float_precision="round_trip",
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError as e:
        raise SchemaError(f"{path}: file has no header row") from e
    except pd.errors.ParserError as e:
        raise SchemaError(f"{path}: not a comma-separated file: {e}") from e


def ingest_csv(path: Union[str, Path], units: str = "aviation") -> IngestResult:
    """Parse a state-vector CSV file.

    Args:
        path: The CSV file
        units: ``"aviation"`` (knots, feet, ft/min) or ``"metric"`` (m/s, m, m/s)

    Returns:
        The parsed records in file order and the number of skipped rows

    Raises:
        FileNotFoundError: If the file does not exist
        SchemaError: If the header is missing or lacks a required column
    """
    if units not in UNITS:
        raise ValueError(f"units must be one of {UNITS}, got {units!r}")
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such file: {path}")

    frame = _read_frame(path)
    for column in COLUMNS:
        if column not in frame.columns:
            raise SchemaError(f"{path}: missing required column {column!r}", column=column)

    if frame.empty:
        logger.info("ingest.complete", path=str(path), records=0, skipped=0)
        return IngestResult()

    numeric = {
        col: pd.to_numeric(frame[col], errors="coerce").to_numpy(np.float64)
        for col in NUMERIC_COLUMNS
    }
    icao24 = frame["icao24"].fillna("").astype(str).str.strip().str.lower().to_numpy()
    callsign = frame["callsign"].fillna("").astype(str).str.strip().to_numpy()

    if units == "metric":
        numeric["velocity"] = numeric["velocity"] * KNOTS_PER_MPS
        numeric["baroaltitude"] = numeric["baroaltitude"] * FEET_PER_METRE
        numeric["vertrate"] = numeric["vertrate"] * FPM_PER_MPS

    valid = np.logical_and.reduce([np.isfinite(values) for values in numeric.values()])
    valid &= (icao24 != "") & (callsign != "")
    valid &= np.abs(np.nan_to_num(numeric["lat"], nan=999.0)) <= 90.0
    valid &= np.abs(np.nan_to_num(numeric["lon"], nan=999.0)) <= 180.0
    valid &= np.nan_to_num(numeric["velocity"], nan=-1.0) >= 0.0
    heading = wrap_headings(np.nan_to_num(numeric["heading"]))

    records = [
        StateVector(
            time=float(numeric["time"][i]),
            icao24=str(icao24[i]),
            callsign=str(callsign[i]),
            latitude=float(numeric["lat"][i]),
            longitude=float(numeric["lon"][i]),
            groundspeed=float(numeric["velocity"][i]),
            heading=float(heading[i]),
            vertical_rate=float(numeric["vertrate"][i]),
            altitude=float(numeric["baroaltitude"][i]),
        )
        for i in np.flatnonzero(valid)
    ]
    skipped = int(len(frame) - len(records))
    logger.info("ingest.complete", path=str(path), records=len(records), skipped=skipped)
    return IngestResult(records=records, skipped=skipped)


def write_flights_csv(flights: Iterable[FlightSequence], path: Union[str, Path]) -> int:
    """Write flights in the ingest schema (aviation units).

    Returns:
        The number of rows written
    """
    rows = [
        (
            r.time,
            r.icao24,
            r.callsign,
            r.latitude,
            r.longitude,
            r.groundspeed,
            r.heading,
            r.vertical_rate,
            r.altitude,
        )
        for flight in flights
        for r in flight.records
    ]
    frame = pd.DataFrame(rows, columns=list(COLUMNS))
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, lineterminator="\n")
    logger.info("flights.written", path=str(path), rows=len(rows))
    return len(rows)
