"""
Fusion Limits
Exact computations with fusion systems over finite p-groups: orbit
categories, higher limits of cohomology functors, Rep graphs and scenario
checkers for sharpness.
"""

__version__ = "0.1.0"
