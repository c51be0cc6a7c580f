"""Civic participation platform: pre-surveys, mood-tagged visions, and an
empathy guessing game, served over a JSON API."""

__version__ = "0.1.0"
