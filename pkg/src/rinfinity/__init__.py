"""Exact computational toolkit for Thompson-like groups.

Subpackages cover exact arithmetic in Q(sqrt5), piecewise-linear
homeomorphism groups, tree-pair and braided tree diagrams, the
Lodha-Moore transducer groups, Smith normal form and twisted-conjugacy
machinery on abelian groups, worked case studies, and a heuristic
Cayley-ball explorer.  Everything computes exactly; there is no floating
point in any kernel.
"""

__version__ = "0.1.0"
