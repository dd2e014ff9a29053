"""
adsb-sentinel: intrusion detection for ADS-B state-vector streams.

Attack injection, xLSTM and transformer sequence models trained by
forecasting pre-training and detection fine-tuning, a one-vs-rest ensemble
IDS, and its evaluation.
"""

from adsb_sentinel.errors import ConfigurationError, SentinelError, UsageError

__version__ = "0.1.0"

__all__ = ["SentinelError", "ConfigurationError", "UsageError", "__version__"]
