"""Independent reference computations used to cross-check the library.

Nothing here imports braidlink.  Words are lists of ``(generator, sign)``
pairs and trees are ``(label_values, [children])`` tuples so that each
oracle runs straight off the definitions.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial

import sympy


# -- braiding straight from the recursive definition ------------------------

def d_function(word, label):
    return [sign * Fraction(label[g]) for g, sign in word]


def cobound(word, f):
    out, running = [], Fraction(0)
    for (g, sign), value in zip(word, f):
        if sign < 0:
            running += value
            out.append(running)
        else:
            out.append(running)
            running += value
    return out


def tree_values(tree, word):
    label, children = tree
    values = d_function(word, label)
    for child in children:
        values = [a * b for a, b in zip(values, cobound(word, tree_values(child, word)))]
    return values


def braiding(tree, word) -> Fraction:
    return sum(tree_values(tree, word), Fraction(0))


def configurations(tree, word) -> Fraction:
    """Brute force over all placements of vertices at letter positions."""
    labels, edges = [], []

    def walk(t, parent):
        idx = len(labels)
        labels.append(t[0])
        if parent is not None:
            edges.append((idx, parent))
        for c in t[1]:
            walk(c, idx)

    walk(tree, None)
    total = Fraction(0)
    for pos in itertools.product(range(len(word)), repeat=len(labels)):
        if any(pos[c] > pos[p] or (pos[c] == pos[p] and word[pos[p]][1] > 0) for c, p in edges):
            continue
        term = Fraction(1)
        for v, i in enumerate(pos):
            g, sign = word[i]
            term *= sign * Fraction(labels[v][g])
        total += term
    return total


# -- BCH through sympy noncommutative algebra --------------------------------

def _degree(term) -> int:
    total = 0
    for factor in sympy.Mul.make_args(term):
        base, exp = factor.as_base_exp()
        if not base.is_commutative:
            total += int(exp)
    return total


def _truncate(expr, K):
    expr = sympy.expand(expr)
    return sympy.Add(*[t for t in sympy.Add.make_args(expr) if _degree(t) <= K])


def sympy_bch(word, m: int, K: int) -> dict[tuple[int, ...], Fraction]:
    """Coefficients of log(prod exp(±x_g)) as a map from monomials to Fractions."""
    xs = sympy.symbols(f"x0:{m}", commutative=False)
    g = sympy.Integer(1)
    for gen, sign in word:
        factor = sum(((sign * xs[gen]) ** j / factorial(j) for j in range(K + 1)), sympy.Integer(0))
        g = _truncate(g * factor, K)
    y = _truncate(g - 1, K)
    log, power = sympy.Integer(0), sympy.Integer(1)
    for n in range(1, K + 1):
        power = _truncate(power * y, K)
        log += sympy.Rational((-1) ** (n + 1), n) * power
    log = sympy.expand(log)
    out: dict[tuple[int, ...], Fraction] = {}
    for term in sympy.Add.make_args(log):
        if term == 0:
            continue
        coeff, rest = term.as_coeff_Mul()
        mono: list[int] = []
        for factor in sympy.Mul.make_args(rest):
            base, exp = factor.as_base_exp()
            if base.is_commutative:
                coeff *= factor
                continue
            mono.extend([xs.index(base)] * int(exp))
        key = tuple(mono)
        out[key] = out.get(key, Fraction(0)) + Fraction(int(coeff.p), int(coeff.q))
    return {k: v for k, v in out.items() if v}


# -- Lie pairing of trees by cobracket recursion -----------------------------

def is_lyndon(w) -> bool:
    return bool(w) and all(tuple(w) < tuple(w[i:]) for i in range(1, len(w)))


def standard_split(w):
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(w)


def _cuts(tree):
    label, children = tree
    for i, child in enumerate(children):
        others = children[:i] + children[i + 1 :]
        yield child, (label, others)
        for branch, rest in _cuts(child):
            yield branch, (label, others + [rest])


def _size(tree) -> int:
    return 1 + sum(_size(c) for c in tree[1])


def eil_pairing(tree, lyndon_word) -> Fraction:
    """<tree, bracketing of a Lyndon word> via <T,[u,v]> = <]T[, u⊗v>."""
    if _size(tree) != len(lyndon_word):
        return Fraction(0)
    if len(lyndon_word) == 1:
        return Fraction(tree[0][lyndon_word[0]])
    u, v = standard_split(lyndon_word)
    total = Fraction(0)
    for branch, rest in _cuts(tree):
        total += eil_pairing(branch, u) * eil_pairing(rest, v)
        total -= eil_pairing(rest, u) * eil_pairing(branch, v)
    return total


# -- linear algebra through sympy --------------------------------------------

def sympy_rank(rows) -> int:
    if not rows:
        return 0
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x for x in r] for r in rows]).rank()


def witt(m: int, n: int) -> int:
    return int(sum(sympy.mobius(d) * m ** (n // d) for d in sympy.divisors(n)) // n)
