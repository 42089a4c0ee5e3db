"""Exhaustive equivalence and agreement checks, and random corpora."""
