"""Signatures, function components, causal multiteams and their enumeration."""
