"""Logging core and error types."""
