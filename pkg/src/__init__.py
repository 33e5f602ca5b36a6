"""
Symmetry Testing Toolkit Package
"""

__version__ = "1.0.0"
__author__ = "Symmetry Testing Team"
__description__ = (
    "Optimal type-II error, optimal protocols and numeric cross-checks for unitary subgroup hypothesis testing"
)
