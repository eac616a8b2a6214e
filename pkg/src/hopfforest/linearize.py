"""Level assignments (linearizations) of tree and forest posets, the chain
tensors they produce, and the identities tying them to iterated reduced
coproducts.

A k-linearization assigns every vertex a level in 1..k, onto (every level
used) and strictly order-preserving (ancestors get strictly smaller levels).
Its chain is the rank-k tensor whose t-th slot is the monomial of left
decorations over the level-t fiber.  Summing chains over all k-linearizations
of all realized trees, weighted by tree coefficient times ordered-assignment
multiplicity, reproduces the k-fold iterated reduced coproduct; the rank-2
version over forests reproduces the reduced coproduct of product monomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .algebra import Monomial, Polynomial, Tensor
from .coproduct import iterated_reduced, reduced_coproduct_poly
from .errors import InputError
from .hopfspec import CoproductSpec
from .trees import (
    Address,
    DecoratedTree,
    PosetView,
    TreeLike,
    enumerate_forests,
    enumerate_trees,
    tree_coefficient,
    tree_multiplicity,
    view_of,
)


@dataclass(frozen=True)
class Linearization:
    """Levels presented as fibers: fibers[t] is the set of vertex addresses
    at level t+1.  Fibers are nonempty and partition the poset's vertices."""

    fibers: tuple[frozenset[Address], ...]

    @property
    def k(self) -> int:
        return len(self.fibers)

    def level_of(self, a: Address) -> int:
        for t, fiber in enumerate(self.fibers):
            if a in fiber:
                return t + 1
        raise InputError(f"vertex {a!r} is not assigned a level")


def _sort_key(lin: Linearization):
    return tuple(tuple(sorted(f)) for f in lin.fibers)


def linearizations_of_view(view: PosetView, k: int) -> tuple[Linearization, ...]:
    """All k-linearizations of an arbitrary poset view, by peeling a
    nonempty subset of currently minimal vertices per level.  Remaining
    vertex sets are always upward closed, so minimality is a direct-parent
    check."""
    if k < 1:
        raise InputError(f"level count must be >= 1, got {k}")
    found: list[Linearization] = []

    def peel(remaining: frozenset, prefix: tuple, levels_left: int) -> None:
        if not remaining:
            if levels_left == 0:
                found.append(Linearization(prefix))
            return
        if levels_left == 0 or len(remaining) < levels_left:
            return
        minimal = sorted(a for a in remaining if view.parent[a] not in remaining)
        for mask in range(1, 1 << len(minimal)):
            fiber = frozenset(
                minimal[j] for j in range(len(minimal)) if mask >> j & 1
            )
            peel(remaining - fiber, prefix + (fiber,), levels_left - 1)

    peel(frozenset(view.vertices), (), k)
    return tuple(sorted(found, key=_sort_key))


def k_linearizations(
    x: Union[TreeLike, PosetView], k: int
) -> tuple[Linearization, ...]:
    """All k-linearizations of a tree or forest (or a prebuilt view)."""
    return linearizations_of_view(view_of(x), k)


def chain_of(x: Union[TreeLike, PosetView], lin: Linearization) -> Tensor:
    """The rank-k tensor of level-fiber monomials of left decorations."""
    view = view_of(x)
    seen: set[Address] = set()
    for fiber in lin.fibers:
        if not fiber or fiber & seen:
            raise InputError("linearization fibers must be disjoint and nonempty")
        seen |= fiber
    if seen != set(view.vertices):
        raise InputError("linearization does not cover this poset's vertices")
    key = tuple(
        Monomial(tuple(view.left_of[a] for a in fiber)) for fiber in lin.fibers
    )
    return Tensor.single(key)


def alternating_sum(t: DecoratedTree) -> int:
    """Sum over k of (-1)^k times the number of k-linearizations; equals
    (-1)^(vertex count) for every rooted tree."""
    view = PosetView.of_tree(t)
    total = 0
    for k in range(1, view.size() + 1):
        total += (-1) ** k * len(linearizations_of_view(view, k))
    return total


def tree_expansion(spec: CoproductSpec, i: int, k: int) -> Tensor:
    """The tree side of the iterated-coproduct identity: sum over realized
    trees of coefficient times ordered-assignment multiplicity times the sum
    of k-linearization chains."""
    total = Tensor.zero(k)
    for t in enumerate_trees(spec, i):
        lam = tree_coefficient(t, spec) * tree_multiplicity(t)
        view = PosetView.of_tree(t)
        for lin in linearizations_of_view(view, k):
            total = total + chain_of(view, lin) * lam
    return total


def tree_expansion_report(spec: CoproductSpec, i: int, k: int) -> list[str]:
    """Compares the k-fold iterated reduced coproduct of generator i with
    its tree/linearization expansion; returns failure descriptions."""
    if k < 1:
        raise InputError(f"level count must be >= 1, got {k}")
    direct = iterated_reduced(spec, i, k)
    expanded = tree_expansion(spec, i, k)
    if direct != expanded:
        return [
            f"iterated coproduct mismatch for generator {i} at rank {k}: "
            f"direct {direct} vs tree expansion {expanded}"
        ]
    return []


def forest_expansion(spec: CoproductSpec, indices: Iterable[int]) -> Tensor:
    """The forest side of the product-coproduct identity: rank-2 chains over
    every forest choice, weighted by forest coefficient times the components'
    ordered-assignment multiplicities."""
    total = Tensor.zero(2)
    for f in enumerate_forests(spec, indices):
        lam = tree_coefficient(f, spec) * tree_multiplicity(f)
        view = PosetView.of_forest(f)
        for lin in linearizations_of_view(view, 2):
            total = total + chain_of(view, lin) * lam
    return total


def forest_expansion_report(
    spec: CoproductSpec, indices: Iterable[int]
) -> list[str]:
    """Compares the reduced coproduct of the monomial over `indices` with
    its forest/linearization expansion; returns failure descriptions."""
    indices = tuple(indices)
    if not indices:
        raise InputError("the expansion needs at least one generator index")
    direct = reduced_coproduct_poly(spec, Polynomial.single(Monomial(indices)))
    expanded = forest_expansion(spec, indices)
    if direct != expanded:
        return [
            f"reduced-coproduct mismatch for monomial {Monomial(indices)}: "
            f"direct {direct} vs forest expansion {expanded}"
        ]
    return []
