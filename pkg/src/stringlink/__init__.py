"""Milnor invariants and HOMFLYPT polynomials of string links."""
