"""explab: spectral expansion bounds, exhaustive oracles, and graph codes.

Core layers: finite fields -> graphs -> spectra -> closed-form bounds ->
exhaustive verification oracles -> code constructions, plus an HTTP service
(`explab.service`) and a CLI (`explab.cli`) that is a thin client of it.
"""

__version__ = "0.1.0"
