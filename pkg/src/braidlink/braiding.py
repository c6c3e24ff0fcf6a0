"""D-functions, cobounding, braiding products and letter-braiding evaluation.

Three evaluators are provided and must agree exactly:

* ``evaluate_recursive`` builds the d-function of every subtree,
* ``evaluate_single_pass`` streams the word once keeping two counters per
  vertex,
* ``configuration_value`` enumerates proper configurations and is only
  meant as a brute-force oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import DimensionError
from .symbols import SymbolSum, TreeSymbol
from .words import Homomorphism, Word

DFunction = tuple[Fraction, ...]

ZERO = Fraction(0)


def induced_dfunction(w: Word, h: Homomorphism) -> DFunction:
    return tuple(h(letter) for letter in w)


def integrate(f: Sequence[Fraction]) -> Fraction:
    return sum(f, ZERO)


def cobound(w: Word, f: Sequence[Fraction]) -> DFunction:
    """Partial sums of ``f``, including position j itself only when letter j is an inverse."""
    if len(f) != len(w):
        raise DimensionError(f"d-function of length {len(f)} on a word of length {len(w)}")
    out = []
    running = ZERO
    for letter, value in zip(w, f):
        if letter.sign < 0:
            running += value
            out.append(running)
        else:
            out.append(running)
            running += value
    return tuple(out)


def braiding_product(w: Word, f: Sequence[Fraction], g: Sequence[Fraction]) -> DFunction:
    if len(g) != len(w):
        raise DimensionError(f"d-function of length {len(g)} on a word of length {len(w)}")
    return tuple(a * b for a, b in zip(cobound(w, f), g))


def tree_dfunction(tree: TreeSymbol, w: Word) -> DFunction:
    """Pull back a tree symbol to a d-function on ``w``."""
    values = list(induced_dfunction(w, tree.label))
    for child in tree.children:
        bounded = cobound(w, tree_dfunction(child, w))
        values = [a * b for a, b in zip(values, bounded)]
    return tuple(values)


def _terms(sigma):
    if isinstance(sigma, TreeSymbol):
        return [(sigma, Fraction(1))]
    return list(sigma)


def evaluate_recursive(sigma: SymbolSum | TreeSymbol, w: Word) -> Fraction:
    return sum((c * integrate(tree_dfunction(t, w)) for t, c in _terms(sigma)), ZERO)


@dataclass
class _Counter:
    label: Homomorphism
    children: list["_Counter"]
    sigma: Fraction = ZERO
    delta: Fraction = ZERO
    trace: list | None = None


def _counters(tree: TreeSymbol, record: bool) -> _Counter:
    return _Counter(
        tree.label,
        [_counters(c, record) for c in tree.children],
        trace=[] if record else None,
    )


def _step(node: _Counter, letter) -> None:
    # children first: the parent reads their updated running sums
    for child in node.children:
        _step(child, letter)
    node.sigma += node.delta
    node.delta = ZERO
    value = node.label(letter)
    for child in node.children:
        value *= child.sigma
    if letter.sign < 0:
        node.sigma += value
    else:
        node.delta += value
    if node.trace is not None:
        node.trace.append((node.sigma, node.delta))


def single_pass_tree(tree: TreeSymbol, w: Word, record: bool = False):
    """Stream ``w`` once through ``tree``.

    Returns the value, and when ``record`` is set also the per-vertex history
    of ``(sigma, delta)`` after each letter, listed root first.
    """
    root = _counters(tree, record)
    for letter in w:
        _step(root, letter)
    value = root.sigma + root.delta
    if not record:
        return value
    traces = []
    stack = [root]
    while stack:
        node = stack.pop(0)
        traces.append(node.trace)
        stack.extend(node.children)
    return value, traces


def evaluate_single_pass(sigma: SymbolSum | TreeSymbol, w: Word) -> Fraction:
    return sum((c * single_pass_tree(t, w) for t, c in _terms(sigma)), ZERO)


def _tree_edges(tree: TreeSymbol):
    """Flatten to vertex labels plus (child, parent) index pairs; vertex 0 is the root."""
    labels = []
    edges = []

    def walk(t, parent):
        idx = len(labels)
        labels.append(t.label)
        if parent is not None:
            edges.append((idx, parent))
        for c in t.children:
            walk(c, idx)

    walk(tree, None)
    return labels, edges


def configuration_value(tree: TreeSymbol, w: Word) -> Fraction:
    """Sum of label products over proper configurations of ``tree`` in ``w``.

    A configuration places every vertex at a position of ``w`` so that a
    child never sits after its parent, and sits strictly before it whenever
    the parent's letter is a generator (not an inverse).
    """
    labels, edges = _tree_edges(tree)
    n = len(w)
    total = ZERO
    letters = w.letters
    for config in product(range(n), repeat=len(labels)):
        ok = True
        for child, parent in edges:
            pc, pp = config[child], config[parent]
            if pc > pp or (pc == pp and letters[pp].sign > 0):
                ok = False
                break
        if not ok:
            continue
        term = Fraction(1)
        for v, pos in enumerate(config):
            term *= labels[v](letters[pos])
            if not term:
                break
        total += term
    return total


def evaluate_configurations(sigma: SymbolSum | TreeSymbol, w: Word) -> Fraction:
    return sum((c * configuration_value(t, w) for t, c in _terms(sigma)), ZERO)


def is_eigenword(sigma: SymbolSum | TreeSymbol, w: Word) -> bool:
    """True when every non-root subtree of every term integrates to zero on ``w``."""
    for tree, _ in _terms(sigma):
        for sub in tree.subtrees():
            for child in sub.children:
                if integrate(tree_dfunction(child, w)):
                    return False
    return True


EVALUATORS = {
    "recursive": evaluate_recursive,
    "singlepass": evaluate_single_pass,
    "config": evaluate_configurations,
}
