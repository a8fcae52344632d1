"""Shared test support: mock stereo models, tiny generated scenes and finite-difference checks."""
