"""Equivalence-preserving formula rewrites and characteristic formulas."""
