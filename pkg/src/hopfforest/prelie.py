"""Finite-dimensional (truncated) preLie algebras: structure constants, the
symmetric-brace extension of the product to monomial right arguments, the
associative enveloping product on polynomials, identity checkers, the free
rooted-tree grafting instance, and graded dualization into a coproduct table.

All elements live in the symmetric algebra over the basis: a basis element
b_i is the singleton monomial, and preLie products are linear combinations
of basis elements (degree-homogeneous).  Because interesting preLie algebras
are infinite-dimensional, every spec carries a truncation degree D; products
that would land above D are dropped and the result is flagged as truncated.
Identity checkers only assert equalities whose every intermediate stays
within D, where no flag can occur.

The on-disk format is JSON:

    {
      "name": "...",
      "basis": [{"id": 1, "degree": 1, "label": "b1"}, ...],
      "products": [{"left": 1, "right": 1,
                    "result": [{"id": 2, "coeff": "1"}]}, ...],
      "truncation": 4
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
from math import factorial
from typing import Iterable, Mapping, Union

from .algebra import Monomial, Polynomial, Tensor
from .coproduct import coassociativity_report, counit_report
from .errors import ConstructionError, InputError
from .hopfspec import (
    CoproductEntry,
    CoproductSpec,
    Generator,
    _parse_coeff,
    _parse_id,
    _require,
)


class PreLieSpec:
    """Structure constants of a truncated graded preLie algebra."""

    def __init__(
        self,
        name: str,
        basis: Iterable[Generator],
        products: Mapping[tuple[int, int], Polynomial],
        truncation: int,
    ) -> None:
        self.name = str(name)
        self._basis_list = list(basis)
        self.basis = {g.id: g for g in self._basis_list}
        # Zero products are equivalent to absent ones; normalize away.
        self.products = {
            key: value for key, value in products.items() if not value.is_zero
        }
        self.truncation = truncation
        self._cache: dict = {}

    def basis_ids(self) -> list[int]:
        return sorted(self.basis)

    def degree(self, i: int) -> int:
        try:
            return self.basis[i].degree
        except KeyError:
            raise InputError(f"unknown basis id {i}") from None

    def monomial_degree(self, m: Monomial) -> int:
        return sum(self.degree(i) for i in m)

    def validate(self) -> list[str]:
        problems: list[str] = []
        seen: set[int] = set()
        for g in self._basis_list:
            if g.id in seen:
                problems.append(f"duplicate basis id {g.id}")
            seen.add(g.id)
            if g.degree < 1:
                problems.append(
                    f"basis element {g.id} has degree {g.degree}; must be >= 1"
                )
        if not isinstance(self.truncation, int) or self.truncation < 1:
            problems.append(
                f"truncation must be a positive integer, got {self.truncation!r}"
            )
            return problems
        for (i, j), value in sorted(self.products.items()):
            where = f"product ({i}, {j})"
            if i not in self.basis or j not in self.basis:
                problems.append(f"{where}: unknown basis ids")
                continue
            expect = self.degree(i) + self.degree(j)
            if expect > self.truncation:
                problems.append(
                    f"{where}: lands at degree {expect}, above the truncation "
                    f"{self.truncation}; such products must be omitted"
                )
            for m, _ in value.terms():
                if len(m) != 1:
                    problems.append(
                        f"{where}: result term {m} is not a basis element"
                    )
                    continue
                k = m.indices[0]
                if k not in self.basis:
                    problems.append(f"{where}: unknown result id {k}")
                elif self.degree(k) != expect:
                    problems.append(
                        f"{where}: result {m} has degree {self.degree(k)}, "
                        f"expected {expect}"
                    )
        return problems


@dataclass(frozen=True)
class BraceResult:
    """A product value plus a flag recording whether any contribution was
    dropped by the truncation.  Flagged values are lower bounds on the true
    expansion, not equalities."""

    value: Polynomial
    truncated: bool


def prelie_product(spec: PreLieSpec, i: int, j: int) -> BraceResult:
    """The basis product b_i acted on by b_j; zero when no structure
    constant is declared, flagged when the result degree exceeds the
    truncation."""
    if spec.degree(i) + spec.degree(j) > spec.truncation:
        return BraceResult(Polynomial.zero(), True)
    return BraceResult(spec.products.get((i, j), Polynomial.zero()), False)


def _apply_brace(
    spec: PreLieSpec, p: Polynomial, j: int
) -> tuple[Polynomial, bool]:
    """Linear extension of (.) acted on by b_j to polynomials over basis
    elements."""
    out = Polynomial.zero()
    flag = False
    for m, c in p.terms():
        res = prelie_product(spec, m.indices[0], j)
        flag = flag or res.truncated
        out = out + res.value * c
    return out, flag


def brace_action(spec: PreLieSpec, i: int, right: Monomial) -> BraceResult:
    """The symmetric-brace extension of the product to a monomial right
    argument, by the recursion

        a acted on by 1        = a
        a acted on by (B * b)  = (a acted on by B) acted on by b
                                 - sum over occurrences b' of B of
                                   a acted on by ((B without b') * (b' acted on by b))

    peeling the canonically last factor.  The preLie identity makes the
    result independent of which factor is peeled; tests exercise that."""
    key = (i, right.indices)
    cache = spec._cache.setdefault("brace", {})
    if key in cache:
        return cache[key]
    spec.degree(i)  # raises for unknown ids
    if right.is_unit:
        res = BraceResult(Polynomial.variable(i), False)
    elif len(right) == 1:
        res = prelie_product(spec, i, right.indices[0])
    else:
        rest = Monomial(right.indices[:-1])
        last = right.indices[-1]
        inner = brace_action(spec, i, rest)
        total, flagged = _apply_brace(spec, inner.value, last)
        flagged = flagged or inner.truncated
        seen: set[int] = set()
        for pos, j in enumerate(rest.indices):
            if j in seen:
                continue
            seen.add(j)
            mult = rest.indices.count(j)
            removed = Monomial(rest.indices[:pos] + rest.indices[pos + 1 :])
            jb = prelie_product(spec, j, last)
            flagged = flagged or jb.truncated
            for m, c in jb.value.terms():
                sub = brace_action(spec, i, removed * m)
                flagged = flagged or sub.truncated
                total = total - sub.value * (c * mult)
        if spec.degree(i) + spec.monomial_degree(right) > spec.truncation:
            flagged = True
        res = BraceResult(total, flagged)
    cache[key] = res
    return res


def guin_oudom_mul(spec: PreLieSpec, a: Monomial, b: Monomial) -> BraceResult:
    """The enveloping (associative) product of monomials: sum over all maps
    from the right factors to {0} + left positions; factors mapped to 0 stay
    as a plain cofactor, the block over position t acts on the t-th left
    factor through the brace."""
    left = a.indices
    right = b.indices
    total = Polynomial.zero()
    flagged = False
    for assign in iter_product(range(len(left) + 1), repeat=len(right)):
        stay = Monomial(tuple(right[s] for s in range(len(right)) if assign[s] == 0))
        piece = Polynomial.single(stay)
        for t in range(1, len(left) + 1):
            block = Monomial(
                tuple(right[s] for s in range(len(right)) if assign[s] == t)
            )
            res = brace_action(spec, left[t - 1], block)
            flagged = flagged or res.truncated
            piece = piece * res.value
        total = total + piece
    return BraceResult(total, flagged)


def guin_oudom_poly(spec: PreLieSpec, p: Polynomial, q: Polynomial) -> BraceResult:
    """Bilinear extension of the enveloping product."""
    total = Polynomial.zero()
    flagged = False
    for m1, c1 in p.terms():
        for m2, c2 in q.terms():
            res = guin_oudom_mul(spec, m1, m2)
            flagged = flagged or res.truncated
            total = total + res.value * (c1 * c2)
    return BraceResult(total, flagged)


def unshuffle_coproduct(m: Monomial) -> Tensor:
    """The coproduct making every basis element primitive, on one monomial:
    sum over splittings of the factor positions into left/right parts."""
    idx = m.indices
    terms: dict[tuple[Monomial, Monomial], int] = {}
    for mask in range(1 << len(idx)):
        first = Monomial(tuple(idx[s] for s in range(len(idx)) if mask >> s & 1))
        second = Monomial(
            tuple(idx[s] for s in range(len(idx)) if not mask >> s & 1)
        )
        key = (first, second)
        terms[key] = terms.get(key, 0) + 1
    return Tensor(2, terms)


def unshuffle_poly(p: Polynomial) -> Tensor:
    out = Tensor.zero(2)
    for m, c in p.terms():
        out = out + unshuffle_coproduct(m) * c
    return out


def prelie_monomials_up_to(spec: PreLieSpec, max_degree: int) -> list[Monomial]:
    """All monomials over the basis of degree <= max_degree, unit included."""
    ids = spec.basis_ids()

    def build(pos: int, budget: int) -> list[tuple[int, ...]]:
        if pos == len(ids):
            return [()]
        i = ids[pos]
        d = spec.degree(i)
        out: list[tuple[int, ...]] = []
        reps = 0
        while reps * d <= budget:
            for rest in build(pos + 1, budget - reps * d):
                out.append((i,) * reps + rest)
            reps += 1
        return out

    found = [Monomial(t) for t in build(0, max_degree)]
    return sorted(found, key=lambda m: (spec.monomial_degree(m), m.sort_key))


def prelie_check(spec: PreLieSpec) -> list[str]:
    """Evaluates the defining identity

        (x . y) . z - x . (y . z)  =  (x . z) . y - x . (z . y)

    on every ordered basis triple whose total degree fits under the
    truncation; returns one message per violated triple."""
    problems: list[str] = []
    ids = spec.basis_ids()
    for x in ids:
        for y in ids:
            for z in ids:
                if (
                    spec.degree(x) + spec.degree(y) + spec.degree(z)
                    > spec.truncation
                ):
                    continue
                if _associator(spec, x, y, z) != _associator(spec, x, z, y):
                    problems.append(
                        f"preLie identity fails on basis triple ({x}, {y}, {z})"
                    )
    return problems


def _associator(spec: PreLieSpec, x: int, y: int, z: int) -> Polynomial:
    """(x . y) . z - x . (y . z); inputs must fit under the truncation."""
    first, _ = _apply_brace(spec, prelie_product(spec, x, y).value, z)
    second = Polynomial.zero()
    for m, c in prelie_product(spec, y, z).value.terms():
        second = second + prelie_product(spec, x, m.indices[0]).value * c
    return first - second


def associativity_report(spec: PreLieSpec) -> list[str]:
    """Checks (a*b)*c = a*(b*c) for the enveloping product on every monomial
    triple whose total degree fits under the truncation (unit included)."""
    problems: list[str] = []
    mons = prelie_monomials_up_to(spec, spec.truncation)
    for a in mons:
        da = spec.monomial_degree(a)
        for b in mons:
            dab = da + spec.monomial_degree(b)
            if dab > spec.truncation:
                continue
            ab = guin_oudom_mul(spec, a, b)
            for c in mons:
                if dab + spec.monomial_degree(c) > spec.truncation:
                    continue
                bc = guin_oudom_mul(spec, b, c)
                lhs = guin_oudom_poly(spec, ab.value, Polynomial.single(c))
                rhs = guin_oudom_poly(spec, Polynomial.single(a), bc.value)
                if lhs.value != rhs.value:
                    problems.append(
                        f"enveloping product not associative on ({a}, {b}, {c})"
                    )
    return problems


def filtration_report(spec: PreLieSpec) -> list[str]:
    """Checks that a length-n monomial times a length-m monomial is
    supported in word lengths n..n+m, and stays degree-homogeneous."""
    problems: list[str] = []
    mons = [m for m in prelie_monomials_up_to(spec, spec.truncation) if len(m)]
    for a in mons:
        for b in mons:
            degree = spec.monomial_degree(a) + spec.monomial_degree(b)
            if degree > spec.truncation:
                continue
            res = guin_oudom_mul(spec, a, b)
            for m, _ in res.value.terms():
                if not len(a) <= len(m) <= len(a) + len(b):
                    problems.append(
                        f"product ({a})*({b}) leaves the length window "
                        f"[{len(a)}, {len(a) + len(b)}]: term {m}"
                    )
                if spec.monomial_degree(m) != degree:
                    problems.append(
                        f"product ({a})*({b}) is not homogeneous: term {m}"
                    )
    return problems


# --- Free rooted-tree instance ----------------------------------------------

ShapeTree = tuple  # nested tuples: () is a single vertex


def _shape_size(t: ShapeTree) -> int:
    return 1 + sum(_shape_size(c) for c in t)


def _shape_label(t: ShapeTree) -> str:
    return "[" + "".join(_shape_label(c) for c in t) + "]"


def _graft_everywhere(host: ShapeTree, graft: ShapeTree) -> list[ShapeTree]:
    """One result per vertex of the host: the graft attached as a new child
    of that vertex (children re-sorted into canonical nested-tuple form)."""
    out = [tuple(sorted(host + (graft,)))]
    for pos, child in enumerate(host):
        for g in _graft_everywhere(child, graft):
            out.append(tuple(sorted(host[:pos] + (g,) + host[pos + 1 :])))
    return out


def rooted_tree_shapes(max_vertices: int) -> list[ShapeTree]:
    """All unlabeled rooted trees with at most max_vertices vertices, as
    canonical nested tuples, ordered by (size, shape)."""
    if max_vertices < 1:
        raise InputError(f"max_vertices must be >= 1, got {max_vertices}")
    pool: list[tuple[ShapeTree, int]] = [((), 1)]
    for n in range(2, max_vertices + 1):
        def child_forests(total: int, start: int):
            if total == 0:
                yield ()
                return
            for idx in range(start, len(pool)):
                t, size = pool[idx]
                if size <= total:
                    for rest in child_forests(total - size, idx):
                        yield (t,) + rest

        fresh = sorted({tuple(sorted(f)) for f in child_forests(n - 1, 0)})
        pool.extend((t, n) for t in fresh)
    return [t for t, _ in pool]


def grafting_instance(max_vertices: int) -> PreLieSpec:
    """The free preLie algebra on one generator, truncated: basis elements
    are unlabeled rooted trees by vertex count, and the product grafts the
    right tree at every vertex of the left tree."""
    shapes = rooted_tree_shapes(max_vertices)
    ids = {t: k + 1 for k, t in enumerate(shapes)}
    basis = [
        Generator(ids[t], _shape_size(t), _shape_label(t)) for t in shapes
    ]
    products: dict[tuple[int, int], Polynomial] = {}
    for t1 in shapes:
        for t2 in shapes:
            if _shape_size(t1) + _shape_size(t2) > max_vertices:
                continue
            counts: dict[Monomial, int] = {}
            for result in _graft_everywhere(t1, t2):
                m = Monomial((ids[result],))
                counts[m] = counts.get(m, 0) + 1
            products[ids[t1], ids[t2]] = Polynomial(counts)
    return PreLieSpec(f"grafting-{max_vertices}", basis, products, max_vertices)


# --- Graded dualization -------------------------------------------------------

def _symmetry_factor(m: Monomial) -> Fraction:
    out = 1
    for i in set(m.indices):
        out *= factorial(m.indices.count(i))
    return Fraction(out)


def dualize(spec: PreLieSpec, max_degree: int) -> CoproductSpec:
    """Reads a coproduct table off the brace action: the entry for source k,
    left i, right J is the coefficient of b_k in (b_i acted on by b_J),
    divided by the symmetry factor of J (the product of factorials of its
    multiplicities, i.e. the graded pairing that makes distinct monomials
    dual to themselves).

    The result must pass structural validation plus the coassociativity and
    counit checks; any failure raises ConstructionError, because a table
    that fails them is not a usable coproduct no matter how it was obtained.
    """
    if max_degree < 1:
        raise InputError(f"max_degree must be >= 1, got {max_degree}")
    if max_degree > spec.truncation:
        raise InputError(
            f"max_degree {max_degree} exceeds the truncation {spec.truncation}; "
            "brace values above the truncation are unavailable"
        )
    structural = spec.validate()
    if structural:
        raise InputError("invalid preLie spec: " + "; ".join(structural))
    identity_problems = prelie_check(spec)
    if identity_problems:
        raise ConstructionError(
            "refusing to dualize a non-preLie table: "
            + "; ".join(identity_problems)
        )
    gens = [
        Generator(g.id, g.degree, g.label)
        for g in sorted(spec.basis.values(), key=lambda g: g.id)
        if g.degree <= max_degree
    ]
    entries: list[CoproductEntry] = []
    for g in gens:
        for right in prelie_monomials_up_to(spec, max_degree - g.degree):
            if right.is_unit:
                continue
            res = brace_action(spec, g.id, right)
            if res.truncated:
                raise ConstructionError(
                    f"brace value for ({g.id}, {right}) was truncated; "
                    "raise the truncation degree"
                )
            sym = _symmetry_factor(right)
            for m, c in res.value.terms():
                entries.append(
                    CoproductEntry(m.indices[0], g.id, right.indices, c / sym)
                )
    dual = CoproductSpec(f"{spec.name}-dual", gens, entries)
    problems = dual.validate()
    problems += coassociativity_report(dual, max_degree)
    problems += counit_report(dual, max_degree)
    if problems:
        raise ConstructionError(
            "dualized table fails mandatory checks: " + "; ".join(problems)
        )
    return dual


# --- JSON serialization -------------------------------------------------------

def prelie_to_dict(spec: PreLieSpec) -> dict:
    basis = []
    for g in sorted(spec.basis.values(), key=lambda g: g.id):
        item: dict = {"id": g.id, "degree": g.degree}
        if g.label is not None:
            item["label"] = g.label
        basis.append(item)
    products = []
    for (i, j), value in sorted(spec.products.items()):
        products.append(
            {
                "left": i,
                "right": j,
                "result": [
                    {"id": m.indices[0], "coeff": str(c)} for m, c in value.terms()
                ],
            }
        )
    return {
        "name": spec.name,
        "basis": basis,
        "products": products,
        "truncation": spec.truncation,
    }


def save_prelie(spec: PreLieSpec) -> str:
    return json.dumps(prelie_to_dict(spec), indent=2) + "\n"


def prelie_from_dict(doc: object) -> PreLieSpec:
    _require(isinstance(doc, dict), "preLie document must be a JSON object")
    assert isinstance(doc, dict)
    unknown = set(doc) - {"name", "basis", "products", "truncation"}
    _require(not unknown, f"unknown top-level fields {sorted(unknown)}")
    _require(isinstance(doc.get("name"), str), "preLie spec needs a string 'name'")
    _require(isinstance(doc.get("basis"), list), "preLie spec needs a 'basis' list")
    _require(
        isinstance(doc.get("products"), list), "preLie spec needs a 'products' list"
    )
    truncation = doc.get("truncation")
    _require(
        isinstance(truncation, int)
        and not isinstance(truncation, bool)
        and truncation >= 1,
        f"truncation must be a positive integer, got {truncation!r}",
    )

    basis: list[Generator] = []
    for pos, item in enumerate(doc["basis"]):
        where = f"basis[{pos}]"
        _require(isinstance(item, dict), f"{where} must be an object")
        extra = set(item) - {"id", "degree", "label"}
        _require(not extra, f"{where}: unknown fields {sorted(extra)}")
        gid = _parse_id(item.get("id"), where)
        degree = item.get("degree")
        _require(
            isinstance(degree, int) and not isinstance(degree, bool) and degree >= 1,
            f"{where}: degree must be a positive integer, got {degree!r}",
        )
        label = item.get("label")
        _require(
            label is None or isinstance(label, str), f"{where}: label must be a string"
        )
        basis.append(Generator(gid, degree, label))

    products: dict[tuple[int, int], Polynomial] = {}
    for pos, item in enumerate(doc["products"]):
        where = f"products[{pos}]"
        _require(isinstance(item, dict), f"{where} must be an object")
        extra = set(item) - {"left", "right", "result"}
        _require(not extra, f"{where}: unknown fields {sorted(extra)}")
        i = _parse_id(item.get("left"), where)
        j = _parse_id(item.get("right"), where)
        _require((i, j) not in products, f"{where}: duplicate pair ({i}, {j})")
        raw = item.get("result")
        _require(isinstance(raw, list), f"{where}: result must be a list")
        terms: dict[Monomial, Fraction] = {}
        for tpos, term in enumerate(raw):
            twhere = f"{where}.result[{tpos}]"
            _require(isinstance(term, dict), f"{twhere} must be an object")
            textra = set(term) - {"id", "coeff"}
            _require(not textra, f"{twhere}: unknown fields {sorted(textra)}")
            k = _parse_id(term.get("id"), twhere)
            coeff = _parse_coeff(term.get("coeff"), twhere)
            key = Monomial((k,))
            terms[key] = terms.get(key, Fraction(0)) + coeff
        products[i, j] = Polynomial(terms)

    spec = PreLieSpec(doc["name"], basis, products, truncation)
    problems = spec.validate()
    if problems:
        raise InputError("invalid preLie spec: " + "; ".join(problems))
    return spec


def load_prelie(text: Union[str, bytes]) -> PreLieSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from None
    return prelie_from_dict(doc)


def load_prelie_file(path: str) -> PreLieSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read preLie spec file {path}: {exc}") from None
    return load_prelie(text)
