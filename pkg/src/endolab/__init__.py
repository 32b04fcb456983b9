"""Endomorphisms of monoids of monotone transformations of a finite chain."""
