"""Desk-scale runtime and simulator for an expressive bipedal robotic character."""

__version__ = "0.1.0"
