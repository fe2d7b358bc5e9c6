"""Exact-arithmetic engine for the cluster structure on semi-invariant rings of triple flags."""

__version__ = "0.1.0"
