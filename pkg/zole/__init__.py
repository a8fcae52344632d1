"""zole: zoom-and-learn self-adaptation for deep stereo matching."""

__version__ = "0.1.0"
