"""Tests for the synthetic flight generator."""

import numpy as np
import pytest

from adsb_sentinel.data import FEATURE_INDEX, SynthProfile, synthesize_flights


def test_same_seed_is_bit_identical(short_profile):
    assert synthesize_flights(5, 3, short_profile) == synthesize_flights(5, 3, short_profile)


def test_different_seeds_differ(short_profile):
    assert synthesize_flights(2, 3, short_profile) != synthesize_flights(2, 4, short_profile)


def test_lengths_follow_the_profile(flights, short_profile):
    assert all(short_profile.min_records <= len(f) <= short_profile.max_records for f in flights)
    assert len({f.flight_id for f in flights}) == len(flights)


def test_altitude_follows_the_vertical_rate(flights):
    for flight in flights:
        matrix = flight.to_matrix()
        altitude = matrix[:, FEATURE_INDEX["altitude"]]
        rate = matrix[:, FEATURE_INDEX["vertical_rate"]]
        assert np.all(np.abs(np.diff(altitude) - rate[1:] * 10.0 / 60.0) <= 1.0)


def test_heading_stays_in_range_and_turns_smoothly(flights):
    for flight in flights:
        heading = flight.to_matrix()[:, FEATURE_INDEX["heading"]]
        assert np.all((heading >= 0.0) & (heading < 360.0))
        change = np.abs((np.diff(heading) + 180.0) % 360.0 - 180.0)
        assert np.all(change <= 3.0 + 1e-9)


def test_groundspeed_stays_in_range(flights):
    for flight in flights:
        speed = flight.to_matrix()[:, FEATURE_INDEX["groundspeed"]]
        assert np.all((speed >= 250.0) & (speed <= 500.0))


def test_records_are_ten_seconds_apart(flights):
    for flight in flights:
        assert np.all(np.diff(flight.times()) == 10.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"min_records": 1},
        {"min_records": 90, "max_records": 80},
        {"turn_probability": 1.5},
        {"interval": 0.0},
    ],
)
def test_invalid_profiles_are_rejected(kwargs):
    with pytest.raises(ValueError):
        SynthProfile(**kwargs)


def test_at_least_one_flight():
    with pytest.raises(ValueError):
        synthesize_flights(0, 1)
