"""futamix: an offline partial evaluator for a small flowchart language,
self-applicable, with the three Futamura projections."""

__version__ = "0.1.0"
