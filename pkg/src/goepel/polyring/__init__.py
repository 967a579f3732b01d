"""Exact polynomial arithmetic over QQ, F_p and F_{p^k}."""
from .fields import QQ, DEFAULT_PRIME, ExtensionField, PrimeField, Rationals, rank, rank_mod_p, rref, rref_mod_p
from . import univariate
