"""finsetrep: exact computational representation theory of the categories
of finite sets (all maps, injections, surjections, bijections) over the
rationals.

Layers:
  partitions  -- partition combinatorics (enumeration, strips, hooks)
  symrep      -- symmetric-group character calculus
  fbgroth     -- truncated Grothendieck groups of symmetric sequences
  facalc      -- closed-form structure theory of finite-set modules
  oracle      -- brute-force matrix verification engine
  cli         -- command-line interface
"""

__version__ = "0.1.0"

from . import partitions, symrep, fbgroth, facalc

__all__ = ["partitions", "symrep", "fbgroth", "facalc", "__version__"]
