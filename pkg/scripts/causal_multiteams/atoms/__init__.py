"""Dependence-style atoms as formulas, with counting checks."""
