"""Flat plumbing baskets: codes, boundary diagrams, knot invariants and censuses."""
from .code import BasketCode, CodeError, canonical_form, parse_code
from .invariants import Fingerprint, fingerprint

__version__ = "0.1.0"

__all__ = ["BasketCode", "CodeError", "Fingerprint", "canonical_form", "fingerprint", "parse_code"]
