"""Experiment driver and CLI."""
