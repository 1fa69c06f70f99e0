"""wordbench: deterministic solvers and tooling for distinct-letter Wordle."""

__version__ = "0.1.0"
