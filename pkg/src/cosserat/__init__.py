"""Cosserat spectrum and inf-sup constants of corner domains.

Modules
-------
mellin2d
    Characteristic equation of plane sectors, essential-spectrum intervals,
    singular exponents and singular functions.
cone3d
    Mellin determinant of axisymmetric cones and critical-line root regions.
fem
    Tensor-product Stokes elements on rectangles and cuboids, discrete
    Cosserat eigenvalues and convergence studies.
bounds
    Explicit upper and lower bounds for rectangles, channels and cuboids.
"""

__version__ = "0.1.0"
