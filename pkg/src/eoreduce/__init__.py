"""Bounded reduction of isotropic unimodular columns in split orthogonal groups
over polynomial rings, with replayable transvection certificates."""

__version__ = "0.1.0"
