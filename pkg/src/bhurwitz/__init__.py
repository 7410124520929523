"""b-deformed Hurwitz numbers: Jack expansions, W-algebra constraints and topological recursion."""

__version__ = "0.1.0"
