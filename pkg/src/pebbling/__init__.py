"""Exact t-pebbling on small graphs, with constructive solvers for graphs
that have a universal vertex."""

__version__ = "0.1.0"
