"""Decorated non-planar rooted trees, forests, their statistics, exhaustive
enumeration against a coproduct table, and corolla cuts with quotients.

Every vertex carries two positive integers (source, left).  The source is
the generator the vertex stands for; the left value is the generator the
vertex emits into monomials.  Leaves must have source == left, and that
shared value is the leaf decoration.  An internal vertex with source i and
left i0 whose children have sources I corresponds to the coproduct entry
(i; i0; I); the product of those entry coefficients over all internal
vertices is the tree's coefficient.

Trees are non-planar: children are kept sorted by a fixed total order
(source, then left, then child lists lexicographically), so equal trees are
structurally equal and hashing is sound.  The file format / CLI notation is
"L(i)" for leaves, "N(i;j)[child,child,...]" for internal vertices, and
"*" to join forest components.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product as iter_product
from math import factorial
from typing import Iterable, NamedTuple, Optional, Union

from .algebra import Monomial, Rational
from .errors import InputError
from .hopfspec import CoproductSpec


def _check_decoration(value: int, what: str) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise InputError(f"{what} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class DecoratedTree:
    """A rooted tree whose vertices carry (source, left) decorations;
    children are canonically sorted at construction."""

    source: int
    left: int
    children: tuple["DecoratedTree", ...] = ()

    def __post_init__(self) -> None:
        _check_decoration(self.source, "source decoration")
        _check_decoration(self.left, "left decoration")
        kids = tuple(self.children)
        for c in kids:
            if not isinstance(c, DecoratedTree):
                raise InputError(f"children must be DecoratedTree, got {c!r}")
        if not kids and self.source != self.left:
            raise InputError(
                f"a leaf has a single decoration; got source {self.source} "
                f"!= left {self.left}"
            )
        object.__setattr__(self, "children", tuple(sorted(kids, key=structure_key)))

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def __str__(self) -> str:
        return tree_notation(self)


def structure_key(t: DecoratedTree):
    """Total order used for canonical forms: (source, left), then the child
    key lists compared lexicographically."""
    return (t.source, t.left, tuple(structure_key(c) for c in t.children))


def leaf(i: int) -> DecoratedTree:
    return DecoratedTree(i, i, ())


def node(
    source: int, left: int, children: Iterable[DecoratedTree]
) -> DecoratedTree:
    """Internal-vertex constructor: grafts the child trees under a new root
    decorated (source; left).  Internal vertices must have children."""
    kids = tuple(children)
    if not kids:
        raise InputError("an internal vertex needs children; use leaf() instead")
    return DecoratedTree(source, left, kids)


def canonicalize(t: DecoratedTree) -> DecoratedTree:
    """Rebuild a tree bottom-up, sorting children at every level.  All
    constructors already do this, so the map is idempotent."""
    return DecoratedTree(t.source, t.left, tuple(canonicalize(c) for c in t.children))


@dataclass(frozen=True)
class Forest:
    """A multiset of decorated trees (a commutative product)."""

    trees: tuple[DecoratedTree, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "trees", tuple(sorted(self.trees, key=structure_key))
        )

    def __str__(self) -> str:
        return forest_notation(self)


def forest(*trees: DecoratedTree) -> Forest:
    return Forest(tuple(trees))


TreeLike = Union[DecoratedTree, Forest]


def _components(x: TreeLike) -> tuple[DecoratedTree, ...]:
    if isinstance(x, DecoratedTree):
        return (x,)
    if isinstance(x, Forest):
        return x.trees
    raise InputError(f"expected a DecoratedTree or Forest, got {x!r}")


def vertex_count(x: TreeLike) -> int:
    """The statistic l: total number of vertices (additive over forests)."""

    def count(t: DecoratedTree) -> int:
        return 1 + sum(count(c) for c in t.children)

    return sum(count(t) for t in _components(x))


def height(x: TreeLike) -> int:
    """The statistic h: vertices on a longest root-to-leaf path (a single
    leaf has height 1); maximum over forest components, 0 for the empty
    forest."""

    def depth(t: DecoratedTree) -> int:
        return 1 + max((depth(c) for c in t.children), default=0)

    return max((depth(t) for t in _components(x)), default=0)


def tree_coefficient(x: TreeLike, spec: CoproductSpec) -> Rational:
    """Product over internal vertices of the coproduct coefficient for
    (source; left; children's sources).  A vertex with no matching table
    entry contributes 0: the tree is not realized by this table.
    Multiplicative over forests; leaves contribute 1."""

    def of_tree(t: DecoratedTree) -> Fraction:
        if t.is_leaf:
            return Fraction(1)
        out = spec.coefficient(t.source, t.left, [c.source for c in t.children])
        for c in t.children:
            if not out:
                return Fraction(0)
            out *= of_tree(c)
        return out

    out = Fraction(1)
    for t in _components(x):
        out *= of_tree(t)
    return out


def vertex_monomial(x: TreeLike) -> Monomial:
    """The statistic v: the monomial collecting b_left over all vertices."""

    def walk(t: DecoratedTree) -> list[int]:
        out = [t.left]
        for c in t.children:
            out.extend(walk(c))
        return out

    indices: list[int] = []
    for t in _components(x):
        indices.extend(walk(t))
    return Monomial(tuple(indices))


class TreeStats(NamedTuple):
    length: int
    height: int
    coefficient: Rational
    value: Monomial


def tree_stats(x: TreeLike, spec: CoproductSpec) -> TreeStats:
    """(l, h, coefficient, value) for a tree or forest."""
    return TreeStats(
        vertex_count(x), height(x), tree_coefficient(x, spec), vertex_monomial(x)
    )


def tree_multiplicity(x: TreeLike) -> int:
    """Number of ordered subtree assignments that collapse to this canonical
    tree (multiplicative over forests).

    Coproduct expansions of products are sums over ordered choices: a table
    entry whose right leg repeats an index offers that many interchangeable
    slots, and filling them with distinct subtrees can be done in several
    orders that all canonicalize to the same non-planar tree.  Sums indexed
    by distinct canonical trees must therefore weight each tree by the
    product, over every internal vertex and every group of equal-source
    siblings, of the multinomial coefficient of the distinct-subtree counts
    in that group.  Trees whose equal-source siblings are pairwise equal
    (in particular everything of total degree < 5 in the divided-power
    composition table) have multiplicity 1.
    """

    def of_tree(t: DecoratedTree) -> int:
        out = 1
        groups: dict[int, Counter] = {}
        for c in t.children:
            groups.setdefault(c.source, Counter())[c] += 1
            out *= of_tree(c)
        for group in groups.values():
            out *= factorial(sum(group.values()))
            for count in group.values():
                out //= factorial(count)
        return out

    out = 1
    for t in _components(x):
        out *= of_tree(t)
    return out


def enumerate_trees(spec: CoproductSpec, i: int) -> tuple[DecoratedTree, ...]:
    """Every canonical tree with root source i realized by the table (all
    entry lookups nonzero), in canonical order, each exactly once.

    The leaf is always included; on top of it, every table entry
    (i; i0; {i1..is}) contributes the trees obtained by choosing, as an
    unordered multiset, one realized subtree per right-leg index.  The
    grading makes the recursion finite: right-leg indices have strictly
    smaller degree than the source.  Sums over this set that must match the
    iterated-coproduct expansion weight each tree by tree_multiplicity.
    """
    cache = spec._cache.setdefault("trees", {})
    if i not in cache:
        spec.degree(i)  # raises for unknown ids
        found = {leaf(i)}
        for e in spec.entries_for(i):
            pools = []
            for j in sorted(set(e.right)):
                mult = e.right.count(j)
                pools.append(
                    combinations_with_replacement(enumerate_trees(spec, j), mult)
                )
            for combo in iter_product(*pools):
                children = tuple(t for group in combo for t in group)
                found.add(node(i, e.left, children))
        cache[i] = tuple(sorted(found, key=structure_key))
    return cache[i]


def enumerate_forests(spec: CoproductSpec, indices: Iterable[int]) -> list[Forest]:
    """One forest per choice of a realized tree for each index of the
    multiset.  When indices repeat, the same unordered forest can appear
    several times in the list; that multiplicity is exactly what makes the
    coproduct expansion of a product monomial come out right, so callers
    must not deduplicate."""
    pools = [enumerate_trees(spec, i) for i in indices]
    return [forest(*combo) for combo in iter_product(*pools)]


def tree_notation(t: DecoratedTree) -> str:
    if t.is_leaf:
        return f"L({t.source})"
    inner = ",".join(tree_notation(c) for c in t.children)
    return f"N({t.source};{t.left})[{inner}]"


def forest_notation(f: Forest) -> str:
    return "*".join(tree_notation(t) for t in f.trees) or "1"


# --- Address-level poset views ----------------------------------------------

#: A vertex address: the path of child positions from a root (forest views
#: prefix the component index).
Address = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class PosetView:
    """A concrete poset presentation of a tree or forest: vertices are
    addresses, and x < y means x is a strict ancestor of y (roots are
    minimal).  Views exist so that linearizations and corolla cuts can talk
    about individual vertices, which canonical trees cannot."""

    vertices: tuple[Address, ...]
    parent: dict[Address, Optional[Address]]
    children: dict[Address, tuple[Address, ...]]
    source_of: dict[Address, int]
    left_of: dict[Address, int]

    @classmethod
    def _build(cls, rooted: list[tuple[Address, DecoratedTree]]) -> "PosetView":
        order: list[Address] = []
        parent: dict[Address, Optional[Address]] = {}
        children: dict[Address, tuple[Address, ...]] = {}
        source_of: dict[Address, int] = {}
        left_of: dict[Address, int] = {}

        def walk(addr: Address, t: DecoratedTree, par: Optional[Address]) -> None:
            order.append(addr)
            parent[addr] = par
            source_of[addr] = t.source
            left_of[addr] = t.left
            kids = tuple(addr + (k,) for k in range(len(t.children)))
            children[addr] = kids
            for k, c in enumerate(t.children):
                walk(kids[k], c, addr)

        for addr, t in rooted:
            walk(addr, t, None)
        return cls(tuple(order), parent, children, source_of, left_of)

    @classmethod
    def of_tree(cls, t: DecoratedTree) -> "PosetView":
        return cls._build([((), t)])

    @classmethod
    def of_forest(cls, f: Forest) -> "PosetView":
        return cls._build([((k,), t) for k, t in enumerate(f.trees)])

    @classmethod
    def of_parent_table(
        cls,
        parents: Iterable[Optional[int]],
        source: Union[int, Iterable[int]] = 1,
        left: Union[int, Iterable[int]] = 1,
    ) -> "PosetView":
        """Build a view from a parent table: parents[v] is the index of v's
        parent, or None for a root, and must be smaller than v.  Decorations
        default to 1 everywhere (enough for pure poset work)."""
        table = list(parents)
        n = len(table)
        sources = [source] * n if isinstance(source, int) else list(source)
        lefts = [left] * n if isinstance(left, int) else list(left)
        if len(sources) != n or len(lefts) != n:
            raise InputError("decoration lists must match the parent table length")
        addr = [(v,) for v in range(n)]
        parent: dict[Address, Optional[Address]] = {}
        children: dict[Address, tuple[Address, ...]] = {a: () for a in addr}
        for v, p in enumerate(table):
            if p is None:
                parent[addr[v]] = None
            else:
                if not 0 <= p < v:
                    raise InputError(
                        f"parent of vertex {v} must be an earlier index, got {p}"
                    )
                parent[addr[v]] = addr[p]
                children[addr[p]] += (addr[v],)
        return cls(
            tuple(addr),
            parent,
            children,
            {addr[v]: sources[v] for v in range(n)},
            {addr[v]: lefts[v] for v in range(n)},
        )

    @property
    def roots(self) -> tuple[Address, ...]:
        return tuple(a for a in self.vertices if self.parent[a] is None)

    def is_leaf_vertex(self, a: Address) -> bool:
        return not self.children[a]

    def less(self, x: Address, y: Address) -> bool:
        """Strict ancestor order."""
        p = self.parent[y]
        while p is not None:
            if p == x:
                return True
            p = self.parent[p]
        return False

    def size(self) -> int:
        return len(self.vertices)


def view_of(x: Union[TreeLike, PosetView]) -> PosetView:
    if isinstance(x, PosetView):
        return x
    if isinstance(x, DecoratedTree):
        return PosetView.of_tree(x)
    if isinstance(x, Forest):
        return PosetView.of_forest(x)
    raise InputError(f"expected a tree, forest or poset view, got {x!r}")


# --- Corolla cuts -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CorollaCut:
    """An upward-closed vertex set whose components are single leaves or
    full terminal corollas (an internal vertex together with all of its
    children, those children all being leaves).

    cut       the components as a standalone decorated forest
    quotient  the host tree with every corolla component collapsed to a
              leaf decorated by the corolla root's source; bare-leaf
              components stay leaves of the quotient
    meet      addresses of the component minima (corolla roots and bare
              leaves); these are leaves of the quotient
    vertices  all cut vertex addresses in the host tree
    """

    vertices: frozenset[Address]
    meet: frozenset[Address]
    cut: Forest
    quotient: DecoratedTree
    cut_view: PosetView
    quotient_view: PosetView

    def __str__(self) -> str:
        return forest_notation(self.cut)


def _subsets(items: list[Address]):
    for mask in range(1 << len(items)):
        yield [items[k] for k in range(len(items)) if mask >> k & 1]


def _tree_from_view(view: PosetView, root: Address) -> DecoratedTree:
    def build(a: Address) -> DecoratedTree:
        kids = view.children[a]
        if not kids:
            return leaf(view.left_of[a])
        return node(view.source_of[a], view.left_of[a], tuple(build(c) for c in kids))

    return build(root)


def corolla_cuts(t: DecoratedTree) -> tuple[CorollaCut, ...]:
    """All corolla cuts of a tree.  A single leaf has none (the only
    candidate cut would be the whole tree with nothing left to quotient
    onto)."""
    view = PosetView.of_tree(t)
    if view.size() == 1:
        return ()
    leaves = [a for a in view.vertices if view.is_leaf_vertex(a)]
    terminal = [
        a
        for a in view.vertices
        if view.children[a] and all(view.is_leaf_vertex(c) for c in view.children[a])
    ]
    out: list[CorollaCut] = []
    for chosen in _subsets(terminal):
        covered = {c for x in chosen for c in view.children[x]}
        free = [a for a in leaves if a not in covered]
        for bare in _subsets(free):
            if not chosen and not bare:
                continue
            out.append(_assemble_cut(view, chosen, bare))
    return tuple(out)


def _assemble_cut(
    view: PosetView, chosen: list[Address], bare: list[Address]
) -> CorollaCut:
    meet = frozenset(chosen) | frozenset(bare)
    dropped = {c for x in chosen for c in view.children[x]}
    members = meet | dropped

    components = [
        node(
            view.source_of[x],
            view.left_of[x],
            tuple(leaf(view.source_of[c]) for c in view.children[x]),
        )
        for x in chosen
    ] + [leaf(view.source_of[y]) for y in bare]

    cut_view = PosetView(
        vertices=tuple(a for a in view.vertices if a in members),
        parent={
            a: (view.parent[a] if view.parent[a] in members else None)
            for a in view.vertices
            if a in members
        },
        children={
            a: (view.children[a] if a in chosen else ())
            for a in view.vertices
            if a in members
        },
        source_of={a: view.source_of[a] for a in members},
        left_of={a: view.left_of[a] for a in members},
    )

    keep = [a for a in view.vertices if a not in dropped]
    chosen_set = set(chosen)
    quotient_view = PosetView(
        vertices=tuple(keep),
        parent={a: view.parent[a] for a in keep},
        children={a: (() if a in chosen_set else view.children[a]) for a in keep},
        source_of={a: view.source_of[a] for a in keep},
        left_of={
            a: (view.source_of[a] if a in chosen_set else view.left_of[a])
            for a in keep
        },
    )

    return CorollaCut(
        vertices=frozenset(members),
        meet=meet,
        cut=forest(*components),
        quotient=_tree_from_view(quotient_view, ()),
        cut_view=cut_view,
        quotient_view=quotient_view,
    )
