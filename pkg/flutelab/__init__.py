"""flutelab: flute surfaces, Busemann cocycles and horocycle-orbit diagnostics."""

__version__ = "0.1.0"
