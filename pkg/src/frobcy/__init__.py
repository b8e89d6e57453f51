"""Exact and p-adic tools for fourth-order Calabi-Yau type operators:

* fixed-precision p-adic arithmetic with Teichmueller lifts (``padic``)
* exact polynomial / rational-function algebra over Q (``polyrat``)
* theta-form differential operators and series solutions (``diffop``)
* exterior-square fifth-order companions and horizontal sections (``wedge``)
* the catalog of 24 Hadamard-product operators and their sequences (``catalog``)
* truncated-ratio congruence checks for coefficient sequences (``congruence``)
* degree-4 Frobenius polynomials from p-adic unit roots (``frobenius``)
* splitting classification and modular-form matching (``classify``)
* the ``frobcy`` command line (``cli``)
"""

__version__ = "1.0.0"
