"""Seeded generators and information measures for programmed graphics, text and wave fields."""

__version__ = "0.1.0"
