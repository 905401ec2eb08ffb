"""
rtz - exact certification of zeros of Ramanujan-type polynomials
"""

__version__ = "1.0.0"
