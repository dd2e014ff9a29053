"""Tests for flight grouping and cleaning."""

import math

import pytest

from adsb_sentinel.data import StateVector, clean, group_flights


def _record(time, callsign="AAA", icao24="abc123", altitude=30000.0):
    return StateVector(
        time=float(time),
        icao24=icao24,
        callsign=callsign,
        latitude=50.0,
        longitude=8.0,
        groundspeed=400.0,
        heading=90.0,
        vertical_rate=0.0,
        altitude=altitude,
    )


def test_one_flight_per_callsign():
    records = [_record(0, "AAA"), _record(0, "BBB"), _record(10, "AAA")]
    flights = group_flights(records)
    assert [f.callsign for f in flights] == ["AAA", "BBB"]
    assert [len(f) for f in flights] == [2, 1]


def test_long_silence_splits_a_flight():
    records = [_record(t) for t in range(0, 101, 10)] + [_record(t) for t in range(5000, 5101, 10)]
    flights = group_flights(records)
    assert len(flights) == 2
    assert [f.segment for f in flights] == [0, 1]
    assert flights[1].flight_id == "AAA-abc123-1"


def test_gap_of_exactly_the_threshold_does_not_split():
    assert len(group_flights([_record(0), _record(900)])) == 1


def test_records_are_time_sorted():
    flights = group_flights([_record(t) for t in (30, 10, 20, 0)])
    assert flights[0].times().tolist() == [0.0, 10.0, 20.0, 30.0]


def test_duplicate_timestamps_keep_the_first_record():
    flights = group_flights([_record(0, altitude=1.0), _record(0, altitude=2.0), _record(10)])
    assert len(flights[0]) == 2
    assert flights[0].records[0].altitude == 1.0


def test_same_callsign_different_transponders_are_separate():
    flights = group_flights([_record(0, icao24="aaaaaa"), _record(0, icao24="bbbbbb")])
    assert len(flights) == 2


def test_clean_drops_short_flights():
    short = group_flights([_record(t * 10) for t in range(30)])
    assert clean(short, min_len=50) == []


def test_clean_drops_flights_with_missing_values():
    records = [_record(t * 10) for t in range(60)]
    records[17] = _record(170, altitude=math.nan)
    assert clean(group_flights(records), min_len=50) == []


def test_clean_keeps_complete_flights():
    flights = group_flights([_record(t * 10) for t in range(60)])
    assert clean(flights, min_len=50) == flights


@pytest.mark.parametrize("min_len", [1, 60])
def test_clean_boundary(min_len):
    flights = group_flights([_record(t * 10) for t in range(60)])
    assert len(clean(flights, min_len=min_len)) == 1
