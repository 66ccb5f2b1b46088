"""Torsion of elliptic curves over Q and quadratic fields, with the group-theoretic
and discriminant checks that control torsion growth."""

__version__ = "0.1.0"
