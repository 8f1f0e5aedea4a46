"""Gradings on simple associative and Lie superalgebras over cyclotomic rationals."""

__version__ = "0.1.0"
