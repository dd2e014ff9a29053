"""
Synthetic flight generator.

Flights are sampled every ``interval`` seconds with a climb, cruise and descent
altitude profile, a held heading with occasional smooth turns, jittered
groundspeed, and positions advanced by dead reckoning. Each flight draws from
its own generator seeded with (seed, flight index), so output does not depend
on how flights are scheduled across threads.
"""

import math
from dataclasses import dataclass

import numpy as np

from adsb_sentinel.concurrency import parallel_map
from adsb_sentinel.data.records import FlightSequence, StateVector, wrap_heading
from adsb_sentinel.telemetry import LoggingFacade

logger = LoggingFacade("adsb_sentinel.data.synth")

BASE_TIME = 1_700_000_000.0


@dataclass(frozen=True)
class SynthProfile:
    """Generator parameters. Rates are in ft/min, speeds in knots."""

    min_records: int = 80
    max_records: int = 160
    interval: float = 10.0
    start_altitude: tuple[float, float] = (2000.0, 6000.0)
    cruise_altitude: tuple[float, float] = (28000.0, 39000.0)
    climb_rate: tuple[float, float] = (1500.0, 2500.0)
    descent_rate: tuple[float, float] = (1200.0, 2200.0)
    speed: tuple[float, float] = (250.0, 500.0)
    speed_jitter: float = 2.0
    turn_probability: float = 0.05
    max_turn_rate: float = 3.0
    latitude: tuple[float, float] = (35.0, 60.0)
    longitude: tuple[float, float] = (-10.0, 30.0)

    def __post_init__(self):
        if not 2 <= self.min_records <= self.max_records:
            raise ValueError(
                f"need 2 <= min_records <= max_records, got {self.min_records}, {self.max_records}"
            )
        if self.interval <= 0 or self.max_turn_rate <= 0:
            raise ValueError("interval and max_turn_rate must be positive")
        if not 0.0 <= self.turn_probability <= 1.0:
            raise ValueError(f"turn_probability must lie in [0, 1], got {self.turn_probability}")


def _vertical_profile(
    n: int, profile: SynthProfile, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Altitudes and vertical rates with altitude[t] = altitude[t-1] + rate[t] * dt / 60."""
    per_step = profile.interval / 60.0
    start = rng.uniform(*profile.start_altitude)
    cruise = rng.uniform(*profile.cruise_altitude)
    climb = rng.uniform(*profile.climb_rate)
    descent = rng.uniform(*profile.descent_rate)
    descent_from = n - max(1, n // 4)

    altitude = np.empty(n)
    rate = np.zeros(n)
    altitude[0] = start
    for t in range(1, n):
        if t < descent_from:
            gap = cruise - altitude[t - 1]
            rate[t] = min(climb, gap / per_step) if gap > 0 else 0.0
        else:
            room = altitude[t - 1] - start
            rate[t] = -min(descent, room / per_step) if room > 0 else 0.0
        altitude[t] = altitude[t - 1] + rate[t] * per_step
    return altitude, rate


def _headings(n: int, profile: SynthProfile, rng: np.random.Generator) -> np.ndarray:
    heading = np.empty(n)
    heading[0] = rng.uniform(0.0, 360.0)
    remaining, turn_rate = 0.0, 0.0
    for t in range(1, n):
        if remaining <= 0.0 and rng.random() < profile.turn_probability:
            remaining = rng.uniform(10.0, 90.0)
            turn_rate = rng.uniform(0.5, profile.max_turn_rate) * (1 if rng.random() < 0.5 else -1)
        change = 0.0
        if remaining > 0.0:
            change = math.copysign(min(abs(turn_rate), remaining), turn_rate)
            remaining -= abs(change)
        heading[t] = wrap_heading(heading[t - 1] + change)
    return heading


def synthesize_flight(index: int, seed: int, profile: SynthProfile) -> FlightSequence:
    rng = np.random.default_rng([seed, index])
    n = int(rng.integers(profile.min_records, profile.max_records + 1))
    altitude, vertical_rate = _vertical_profile(n, profile, rng)
    heading = _headings(n, profile, rng)
    low, high = profile.speed
    base_speed = rng.uniform(low, high)
    jitter = rng.uniform(-profile.speed_jitter, profile.speed_jitter, size=n)
    groundspeed = np.clip(base_speed + jitter, low, high)

    latitude = np.empty(n)
    longitude = np.empty(n)
    latitude[0] = rng.uniform(*profile.latitude)
    longitude[0] = rng.uniform(*profile.longitude)
    for t in range(1, n):
        distance_nm = groundspeed[t - 1] * profile.interval / 3600.0
        course = math.radians(heading[t - 1])
        latitude[t] = latitude[t - 1] + distance_nm * math.cos(course) / 60.0
        cos_lat = max(math.cos(math.radians(latitude[t - 1])), 1e-6)
        longitude[t] = longitude[t - 1] + distance_nm * math.sin(course) / (60.0 * cos_lat)

    icao24 = f"{int(rng.integers(0, 2**24)):06x}"
    callsign = f"SYN{index:05d}"
    start_time = BASE_TIME + float(rng.integers(0, 86_400))
    records = tuple(
        StateVector(
            time=start_time + t * profile.interval,
            icao24=icao24,
            callsign=callsign,
            latitude=float(latitude[t]),
            longitude=float(longitude[t]),
            groundspeed=float(groundspeed[t]),
            heading=float(heading[t]),
            vertical_rate=float(vertical_rate[t]),
            altitude=float(altitude[t]),
        )
        for t in range(n)
    )
    return FlightSequence(callsign=callsign, icao24=icao24, records=records)


def synthesize_flights(
    n: int, seed: int, profile: SynthProfile = SynthProfile()
) -> list[FlightSequence]:
    """Generate ``n`` flights, bit-identical for a given seed and profile."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    flights = parallel_map(lambda i: synthesize_flight(i, seed, profile), list(range(n)))
    logger.info("synth.complete", flights=n, seed=seed)
    return flights
