"""Transition densities, likelihood ratios, scores and information."""
