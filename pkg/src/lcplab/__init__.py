"""Exact-arithmetic laboratory for linear complementarity problems."""
