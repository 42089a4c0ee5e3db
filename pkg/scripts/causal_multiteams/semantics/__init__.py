"""Satisfaction for CO and PCO formulas."""
