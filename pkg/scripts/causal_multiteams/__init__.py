"""Model checking, rewriting and inequality compilation for causal multiteams."""

__version__ = "0.1.0"
