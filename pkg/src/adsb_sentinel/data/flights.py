"""
Grouping state vectors into flights and dropping unusable flights.
"""

from collections import defaultdict
from collections.abc import Iterable

from adsb_sentinel.concurrency import parallel_map
from adsb_sentinel.data.records import FlightSequence, StateVector
from adsb_sentinel.telemetry import LoggingFacade

logger = LoggingFacade("adsb_sentinel.data.flights")

# 90 missed updates at the 10 s cadence.
GAP_SPLIT_SECONDS = 900.0


def group_flights(
    records: Iterable[StateVector], gap_seconds: float = GAP_SPLIT_SECONDS
) -> list[FlightSequence]:
    """Group records by (callsign, icao24) into time-sorted flights.

    A silence longer than ``gap_seconds`` starts a new flight. Records repeating
    an earlier timestamp of the same pair are dropped, keeping the first one
    seen. Output is ordered by (callsign, icao24, start time).
    """
    by_key: dict[tuple[str, str], list[StateVector]] = defaultdict(list)
    for record in records:
        by_key[(record.callsign, record.icao24)].append(record)

    flights: list[FlightSequence] = []
    duplicates = 0
    for (callsign, icao24) in sorted(by_key):
        ordered = sorted(by_key[(callsign, icao24)], key=lambda r: r.time)
        unique: list[StateVector] = []
        for record in ordered:
            if unique and record.time == unique[-1].time:
                duplicates += 1
                continue
            unique.append(record)

        segment: list[StateVector] = []
        index = 0
        for record in unique:
            if segment and record.time - segment[-1].time > gap_seconds:
                flights.append(FlightSequence(callsign, icao24, tuple(segment), index))
                index += 1
                segment = []
            segment.append(record)
        if segment:
            flights.append(FlightSequence(callsign, icao24, tuple(segment), index))

    logger.debug("flights.grouped", flights=len(flights), duplicates_dropped=duplicates)
    return flights


def _usable(flight: FlightSequence) -> bool:
    return all(record.is_complete() for record in flight.records)


def clean(flights: Iterable[FlightSequence], min_len: int) -> list[FlightSequence]:
    """Keep flights with at least ``min_len`` records, all of them complete."""
    flights = list(flights)
    complete = parallel_map(_usable, flights)
    kept = [f for f, ok in zip(flights, complete) if ok and len(f) >= min_len]
    logger.info(
        "flights.cleaned",
        kept=len(kept),
        dropped=len(flights) - len(kept),
        min_len=min_len,
    )
    return kept
