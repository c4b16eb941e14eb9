"""Exact and approximate simulation of CIR paths and limit-law draws."""
