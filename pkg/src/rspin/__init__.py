"""Exact combinatorics of r-spin curves.

Submodules:

- :mod:`rspin.arith`      gcd/divisor arithmetic and closed-form counts
- :mod:`rspin.localroot`  orders and power-map exponents at a node
- :mod:`rspin.rewrite`    monomial rewriting over the nodal local ring
- :mod:`rspin.monodromy`  mapping-class action on (Z/r)^{2g}
- :mod:`rspin.nodalnets`  dual graphs and boundary strata
- :mod:`rspin.cli`        command-line front end
"""

__version__ = "0.1.0"
