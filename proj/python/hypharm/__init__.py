"""Exact partial sums of reciprocal squares, collision search and lemma checks."""

import json
from fractions import Fraction

from . import _core

__version__ = _core.__version__
lemma_ids = _core.lemma_ids
g_mod = _core.g_mod
run_cli = _core.run_cli


def g_exact(a, r, exponent=2):
    return Fraction(_core.g_exact(a, r, exponent))


def search(max_n, exponent=2, moduli=3, seed=0, modulus_bits=62):
    return json.loads(_core.search(max_n, exponent, moduli, seed, modulus_bits))


def verify(lemma, **options):
    return json.loads(_core.verify(lemma, **options))


def solve_eta(a, r, precision_bits=64):
    return json.loads(_core.solve_eta(a, r, precision_bits))


def decompose(a1, r, a2, s):
    return json.loads(_core.decompose(a1, r, a2, s))


def reduce_overlap(a1, r, a2, s):
    return json.loads(_core.reduce_overlap(a1, r, a2, s))


def e11_search(a_max, r_max):
    return json.loads(_core.e11_search(a_max, r_max))
