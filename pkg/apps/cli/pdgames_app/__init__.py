"""Command-line front end for pdgames."""

__all__ = ["cli", "dot"]
