"""Small covers of right-angled polytopes.

Enumeration and classification of characteristic functions (proper
GF(2)-vector colorings of facets), mod-2 cohomology rings and
Stiefel-Whitney classes of the resulting manifolds, and a certified
codimension-1 extension pipeline producing 4-manifolds over the
120-cell with nonzero third Stiefel-Whitney class.
"""

__version__ = "0.1.0"
