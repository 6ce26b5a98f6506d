"""Sampling-based motion planning over admissible lower-dimensional projections.

The package couples a plain RRT baseline with a multilevel planner that
grows trees on a user-chosen sequence of projected configuration spaces,
lifting vertices from each level to seed sampling on the next.  A grid
oracle certifies the admissibility properties the projections rely on, and
a benchmark harness reproduces the narrow-passage and sequence-enumeration
experiments at desk scale.
"""

__version__ = "0.1.0"
