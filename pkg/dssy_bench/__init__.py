"""
Nonparametric and parametric DSSY nonconforming quadrilateral elements,
with convergence and timing benchmarks for Poisson, Stokes and planar
elasticity on the unit square.
"""
__version__ = '0.1'
