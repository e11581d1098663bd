"""Quasi-alternating links toolkit."""
