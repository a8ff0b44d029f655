"""Factories for the fusion rings in scope and their canonical embeddings.

Group rings, representation rings from character tables, the lazy
Clebsch-Gordan ring with its index-two even subring, componentwise direct
products, alternating-word free products, and group-twisted semi-direct
products.  Every factory attaches a serializable construction expression so
rings can be hashed and reloaded.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .cyclotomic import Cyclo
from .elements import Element, InvalidInputError, UnknownBasisError
from .rings import BasedRing
from .subrings import SubringEmbedding


# ---------------------------------------------------------------------------
# finite groups

class FiniteGroupPresentation:
    """A finite group as an explicit multiplication table.

    Group axioms are verified at construction: closure, associativity, a
    two-sided identity and inverses.  A violated axiom is reported with the
    offending tuple.
    """

    def __init__(self, elements: Sequence[str], mult: Mapping[Tuple[str, str], str]):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise InvalidInputError("group elements must be distinct")
        if not self.elements:
            raise InvalidInputError("group must be non-empty")
        self.mult = dict(mult)
        universe = set(self.elements)
        for a in self.elements:
            for b in self.elements:
                c = self.mult.get((a, b))
                if c is None:
                    raise InvalidInputError(
                        f"multiplication table missing entry ({a}, {b})")
                if c not in universe:
                    raise InvalidInputError(
                        f"table not closed: ({a}, {b}) ↦ {c!r}")
        identity = None
        for e in self.elements:
            if all(self.mult[(e, a)] == a and self.mult[(a, e)] == a
                   for a in self.elements):
                identity = e
                break
        if identity is None:
            raise InvalidInputError("table has no two-sided identity")
        self.identity = identity
        for a, b, c in itertools.product(self.elements, repeat=3):
            if self.mult[(self.mult[(a, b)], c)] != self.mult[(a, self.mult[(b, c)])]:
                raise InvalidInputError(
                    f"table not associative at ({a}, {b}, {c})")
        inverse: Dict[str, str] = {}
        for a in self.elements:
            for b in self.elements:
                if self.mult[(a, b)] == identity and self.mult[(b, a)] == identity:
                    inverse[a] = b
                    break
            else:
                raise InvalidInputError(f"element {a} has no inverse")
        self.inverse = inverse

    def mul(self, a: str, b: str) -> str:
        try:
            return self.mult[(a, b)]
        except KeyError:
            raise UnknownBasisError(f"unknown group elements ({a}, {b})") from None

    def inv(self, a: str) -> str:
        try:
            return self.inverse[a]
        except KeyError:
            raise UnknownBasisError(f"unknown group element {a!r}") from None

    def to_doc(self) -> dict:
        return {"elements": list(self.elements),
                "mult": sorted([a, b, c] for (a, b), c in self.mult.items())}

    def __repr__(self) -> str:
        return f"FiniteGroupPresentation(order {len(self.elements)})"


def cyclic_group(n: int, generator: str = "a", identity: str = "e") -> FiniteGroupPresentation:
    """Z/n with elements e, a, a2, ..., a{n-1}."""
    if n < 1:
        raise InvalidInputError("cyclic group order must be positive")
    labels = [identity] + [generator if k == 1 else f"{generator}{k}"
                           for k in range(1, n)]
    mult = {(labels[i], labels[k]): labels[(i + k) % n]
            for i in range(n) for k in range(n)}
    return FiniteGroupPresentation(labels, mult)


def group_from_permutations(generators: Mapping[str, Sequence[int]],
                            identity: str = "e") -> FiniteGroupPresentation:
    """Close a set of named permutations under composition.

    Elements are labeled by the first word (in breadth-first generator
    order) that reaches them; composition is function composition, so the
    word "rt" acts by t first, then r.
    """
    degree = None
    perms: Dict[str, Tuple[int, ...]] = {}
    for name, values in generators.items():
        p = tuple(values)
        if degree is None:
            degree = len(p)
        if sorted(p) != list(range(degree)):
            raise InvalidInputError(f"generator {name} is not a permutation")
        perms[name] = p
    if degree is None:
        raise InvalidInputError("no generators given")
    ident = tuple(range(degree))

    def compose(p: Tuple[int, ...], q: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(p[q[i]] for i in range(degree))

    label_of: Dict[Tuple[int, ...], str] = {ident: identity}
    order: List[Tuple[int, ...]] = [ident]
    queue = [ident]
    while queue:
        current = queue.pop(0)
        for name, g in perms.items():
            nxt = compose(current, g)
            if nxt not in label_of:
                prefix = "" if current == ident else label_of[current]
                label_of[nxt] = prefix + name
                order.append(nxt)
                queue.append(nxt)
    mult = {(label_of[p], label_of[q]): label_of[compose(p, q)]
            for p in order for q in order}
    return FiniteGroupPresentation([label_of[p] for p in order], mult)


def symmetric_group_3() -> FiniteGroupPresentation:
    """S3 generated by the 3-cycle r and the transposition t."""
    return group_from_permutations({"r": (1, 2, 0), "t": (1, 0, 2)})


def group_ring(g: FiniteGroupPresentation) -> BasedRing:
    """Z[Γ]: fusion is the multiplication table, conj is inversion, d = 1."""
    universe = set(g.elements)

    def product(a: str, b: str) -> Element:
        if a not in universe or b not in universe:
            raise UnknownBasisError(f"unknown group ring label in ({a!r}, {b!r})")
        return Element.basis(g.mul(a, b))

    def conj(a: str) -> str:
        return g.inv(a)

    def dim(a: str) -> Fraction:
        if a not in universe:
            raise UnknownBasisError(f"unknown group ring label {a!r}")
        return Fraction(1)

    doc = {"kind": "construct", "construct": "group_ring", "group": g.to_doc()}
    return BasedRing(name=f"Z[{len(g.elements)}-elt group]", unit=g.identity,
                     conj=conj, product=product, dim=dim,
                     basis=g.elements, doc=doc)


# ---------------------------------------------------------------------------
# representation rings from character tables

class CharacterTable:
    """Exact character table: class sizes and cyclotomic character values.

    Convention: the first class is the identity class (size 1), so the
    degree of an irreducible is its value there.  Row orthogonality is
    verified exactly at construction; a table that fails it is rejected.
    """

    def __init__(self, classes: Sequence[Tuple[str, int]],
                 irreps: Sequence[Tuple[str, Sequence[Cyclo]]]):
        if not classes:
            raise InvalidInputError("character table needs at least one class")
        self.classes = tuple(label for label, _ in classes)
        self.sizes = tuple(size for _, size in classes)
        if len(set(self.classes)) != len(self.classes):
            raise InvalidInputError("duplicate class labels")
        if any(not isinstance(s, int) or s < 1 for s in self.sizes):
            raise InvalidInputError("class sizes must be positive integers")
        if self.sizes[0] != 1:
            raise InvalidInputError("first class must be the identity class, size 1")
        self.order = sum(self.sizes)
        self.irreps = tuple(label for label, _ in irreps)
        if len(set(self.irreps)) != len(self.irreps):
            raise InvalidInputError("duplicate irreducible labels")
        if len(self.irreps) != len(self.classes):
            raise InvalidInputError(
                f"{len(self.irreps)} irreducibles for {len(self.classes)} "
                "classes; the table must be square")
        self.values: Dict[Tuple[str, str], Cyclo] = {}
        for label, row in irreps:
            row = list(row)
            if len(row) != len(self.classes):
                raise InvalidInputError(f"row {label} has {len(row)} values")
            for cls, value in zip(self.classes, row):
                self.values[(label, cls)] = value
        for label in self.irreps:
            degree = self.values[(label, self.classes[0])].as_integer()
            if degree is None or degree < 1:
                raise InvalidInputError(
                    f"degree of {label} is not a positive integer")
        for a in self.irreps:
            for b in self.irreps:
                total = Cyclo.from_rational(0)
                for cls, size in zip(self.classes, self.sizes):
                    total = total + (self.values[(a, cls)]
                                     * self.values[(b, cls)].conj()).scale(size)
                expected = self.order if a == b else 0
                if total != Cyclo.from_rational(expected):
                    raise InvalidInputError(
                        f"row orthogonality fails for ({a}, {b})")
        trivial = [a for a in self.irreps
                   if all(self.values[(a, cls)] == Cyclo.from_rational(1)
                          for cls in self.classes)]
        if not trivial:
            raise InvalidInputError("table has no trivial character")
        self.trivial = trivial[0]
        self.conjugate_of: Dict[str, str] = {}
        for a in self.irreps:
            matches = [b for b in self.irreps
                       if all(self.values[(b, cls)] == self.values[(a, cls)].conj()
                              for cls in self.classes)]
            if not matches:
                raise InvalidInputError(
                    f"table is not closed under conjugation at {a}")
            self.conjugate_of[a] = matches[0]

    def degree(self, irrep: str) -> int:
        return self.values[(irrep, self.classes[0])].as_integer()

    def to_doc(self) -> dict:
        def value_doc(v: Cyclo):
            q = v.as_rational()
            if q is not None:
                if q.denominator == 1:
                    return q.numerator
                return [q.numerator, q.denominator]
            return {"zeta": v.order,
                    "coeffs": {str(e): [c.numerator, c.denominator]
                               for e, c in sorted(v.coeffs.items())}}
        return {
            "classes": [{"label": l, "size": s}
                        for l, s in zip(self.classes, self.sizes)],
            "irreps": [{"label": a,
                        "values": [value_doc(self.values[(a, cls)])
                                   for cls in self.classes]}
                       for a in self.irreps],
        }


def rep_ring(t: CharacterTable) -> BasedRing:
    """Fusion ring of irreducible characters.

    N^c_{a,b} = (1/|G|) Σ |class| χ_a χ_b conj(χ_c), which must come out a
    non-negative integer for every triple; anything else rejects the table
    as inconsistent.
    """
    fusion: Dict[Tuple[str, str], Element] = {}
    for a in t.irreps:
        for b in t.irreps:
            terms = {}
            for c in t.irreps:
                total = Cyclo.from_rational(0)
                for cls, size in zip(t.classes, t.sizes):
                    total = total + (t.values[(a, cls)] * t.values[(b, cls)]
                                     * t.values[(c, cls)].conj()).scale(size)
                coeff = total.scale(Fraction(1, t.order)).as_integer()
                if coeff is None or coeff < 0:
                    raise InvalidInputError(
                        f"fusion coefficient of {c} in {a} ⊗ {b} is not a "
                        "non-negative integer; character table inconsistent")
                if coeff:
                    terms[c] = coeff
            fusion[(a, b)] = Element(terms)
    universe = set(t.irreps)

    def product(a: str, b: str) -> Element:
        try:
            return fusion[(a, b)]
        except KeyError:
            raise UnknownBasisError(f"unknown irreducible in ({a!r}, {b!r})") from None

    def conj(a: str) -> str:
        try:
            return t.conjugate_of[a]
        except KeyError:
            raise UnknownBasisError(f"unknown irreducible {a!r}") from None

    def dim(a: str) -> Fraction:
        if a not in universe:
            raise UnknownBasisError(f"unknown irreducible {a!r}")
        return Fraction(t.degree(a))

    doc = {"kind": "construct", "construct": "rep_ring",
           "character_table": t.to_doc()}
    return BasedRing(name=f"R(order-{t.order} group)", unit=t.trivial,
                     conj=conj, product=product, dim=dim,
                     basis=t.irreps, doc=doc)


def s3_character_table() -> CharacterTable:
    q = Cyclo.from_rational
    return CharacterTable(
        classes=[("e", 1), ("transposition", 3), ("3-cycle", 2)],
        irreps=[("triv", [q(1), q(1), q(1)]),
                ("sgn", [q(1), q(-1), q(1)]),
                ("std", [q(2), q(0), q(-1)])])


def cyclic_character_table(n: int) -> CharacterTable:
    """All characters of Z/n; values are n-th roots of unity."""
    classes = [(f"c{k}", 1) for k in range(n)]
    irreps = [(f"chi{j}", [Cyclo.zeta(n, (j * k) % n) for k in range(n)])
              for j in range(n)]
    return CharacterTable(classes, irreps)


def trivial_character_table() -> CharacterTable:
    return CharacterTable([("e", 1)], [("triv", [Cyclo.from_rational(1)])])


# ---------------------------------------------------------------------------
# the Clebsch-Gordan ring and its even subring

_CG_LABEL = re.compile(r"^x(0|[1-9][0-9]*)$")


def _cg_index(label: str, ring_name: str) -> int:
    m = _CG_LABEL.match(label)
    if not m:
        raise UnknownBasisError(f"unknown basis label {label!r} in {ring_name}")
    return int(m.group(1))


def _cg_product(m: int, n: int) -> Element:
    return Element({f"x{k}": 1 for k in range(abs(m - n), m + n + 1, 2)})


def su2_ring() -> BasedRing:
    """Lazy ring on x0, x1, x2, ... with x_m ⊗ x_n = x_|m-n| ⊕ ... ⊕ x_{m+n}
    in steps of two, self-conjugate basis, d(x_n) = n + 1."""
    name = "SU2"

    def product(a: str, b: str) -> Element:
        return _cg_product(_cg_index(a, name), _cg_index(b, name))

    def conj(a: str) -> str:
        _cg_index(a, name)
        return a

    def dim(a: str) -> Fraction:
        return Fraction(_cg_index(a, name) + 1)

    return BasedRing(name=name, unit="x0", conj=conj, product=product, dim=dim,
                     generators=("x1",),
                     doc={"kind": "construct", "construct": "su2"})


def so3_ring() -> BasedRing:
    """The even-label subring of the Clebsch-Gordan ring, generated by x2."""
    name = "SO3"

    def check(a: str) -> int:
        n = _cg_index(a, name)
        if n % 2:
            raise UnknownBasisError(f"odd label {a!r} is not in {name}")
        return n

    def product(a: str, b: str) -> Element:
        return _cg_product(check(a), check(b))

    def conj(a: str) -> str:
        check(a)
        return a

    def dim(a: str) -> Fraction:
        return Fraction(check(a) + 1)

    return BasedRing(name=name, unit="x0", conj=conj, product=product, dim=dim,
                     generators=("x2",),
                     doc={"kind": "construct", "construct": "so3"})


def so3_subring(ambient: Optional[BasedRing] = None) -> SubringEmbedding:
    """Even labels inside the full Clebsch-Gordan ring."""
    amb = ambient if ambient is not None else su2_ring()
    sub = so3_ring()

    def mapping(s: str) -> str:
        n = _cg_index(s, sub.name)
        if n % 2:
            raise UnknownBasisError(f"odd label {s!r} is not in {sub.name}")
        return s

    return SubringEmbedding(sub=sub, ambient=amb, mapping=mapping,
                            name="SO3 ↪ SU2",
                            doc={"kind": "embedding", "canonical": "so3_in_su2"})


# ---------------------------------------------------------------------------
# direct products

@dataclass(frozen=True)
class RingWithFactorEmbeddings:
    ring: BasedRing
    left: SubringEmbedding
    right: SubringEmbedding


def _pair_registry(name: str):
    registry: Dict[str, Tuple[str, str]] = {}

    def make(a: str, b: str) -> str:
        label = f"({a},{b})"
        known = registry.get(label)
        if known is None:
            registry[label] = (a, b)
        elif known != (a, b):
            raise InvalidInputError(
                f"ambiguous pair label {label!r} in {name}")
        return label

    def decode(label: str) -> Tuple[str, str]:
        try:
            return registry[label]
        except KeyError:
            raise UnknownBasisError(
                f"unknown basis label {label!r} in {name}") from None

    return make, decode


def direct_product(r1: BasedRing, r2: BasedRing) -> RingWithFactorEmbeddings:
    """Componentwise fusion on pairs, with both factor embeddings."""
    name = f"{r1.name} × {r2.name}"
    make, decode = _pair_registry(name)
    unit = make(r1.unit, r2.unit)

    def product(la: str, lb: str) -> Element:
        a1, a2 = decode(la)
        b1, b2 = decode(lb)
        out = Element.zero()
        for x, cx in r1.product(a1, b1).items():
            for y, cy in r2.product(a2, b2).items():
                out = out + (cx * cy) * Element.basis(make(x, y))
        return out

    def conj(la: str) -> str:
        a1, a2 = decode(la)
        return make(r1.conj(a1), r2.conj(a2))

    def dim(la: str) -> Fraction:
        a1, a2 = decode(la)
        return r1.dim(a1) * r2.dim(a2)

    doc = None
    if r1.doc is not None and r2.doc is not None:
        doc = {"kind": "construct", "construct": "direct_product",
               "left": r1.doc, "right": r2.doc}
    if r1.is_finite and r2.is_finite:
        basis = [make(a, b) for a in r1.basis for b in r2.basis]
        ring = BasedRing(name=name, unit=unit, conj=conj, product=product,
                         dim=dim, basis=basis, doc=doc)
    else:
        gens = [make(g, r2.unit) for g in
                (r1.generators if not r1.is_finite else
                 [a for a in r1.basis if a != r1.unit])]
        gens += [make(r1.unit, g) for g in
                 (r2.generators if not r2.is_finite else
                  [b for b in r2.basis if b != r2.unit])]
        ring = BasedRing(name=name, unit=unit, conj=conj, product=product,
                         dim=dim, generators=gens, doc=doc)

    def embed_left(a: str) -> str:
        return make(a, r2.unit)

    def embed_right(b: str) -> str:
        return make(r1.unit, b)

    left_doc = right_doc = None
    if doc is not None:
        left_doc = {"kind": "embedding", "canonical": "direct_left", "ambient": doc}
        right_doc = {"kind": "embedding", "canonical": "direct_right", "ambient": doc}
    left = SubringEmbedding(sub=r1, ambient=ring, mapping=embed_left,
                            name=f"{r1.name} ↪ {name}", doc=left_doc)
    right = SubringEmbedding(sub=r2, ambient=ring, mapping=embed_right,
                             name=f"{r2.name} ↪ {name}", doc=right_doc)
    return RingWithFactorEmbeddings(ring, left, right)


# ---------------------------------------------------------------------------
# free products

_FREE_UNIT = "ε"


def free_product(r1: BasedRing, r2: BasedRing) -> RingWithFactorEmbeddings:
    """Alternating words over the factors' non-trivial basis labels.

    Words whose inner letters meet in different factors concatenate; equal
    factors contract at the boundary: the letters fuse to every non-trivial
    constituent, plus a recursive term when they are conjugate.  Recursion
    terminates because each step shortens the word.
    """
    name = f"{r1.name} ∗ {r2.name}"
    factors = (r1, r2)
    word_of: Dict[str, Tuple] = {_FREE_UNIT: ()}
    label_of: Dict[Tuple, str] = {(): _FREE_UNIT}
    letter_side: Dict[str, int] = {}

    def register_letter(side: int, letter: str) -> None:
        owner = letter_side.get(letter)
        if owner is None:
            letter_side[letter] = side
        elif owner != side:
            raise InvalidInputError(
                f"letter label {letter!r} appears in both factors of {name}; "
                "relabel one factor")

    def make(word: Tuple) -> str:
        label = label_of.get(word)
        if label is None:
            label = "".join(letter for _, letter in word) or _FREE_UNIT
            clash = word_of.get(label)
            if clash is not None and clash != word:
                raise InvalidInputError(
                    f"word label {label!r} is ambiguous in {name}")
            word_of[label] = word
            label_of[word] = label
        return label

    def decode(label: str) -> Tuple:
        try:
            return word_of[label]
        except KeyError:
            raise UnknownBasisError(
                f"unknown basis label {label!r} in {name}; "
                "only labels discovered by enumeration resolve") from None

    def word_product(u: Tuple, v: Tuple, guard: int) -> Element:
        # each contraction strips a letter from both sides, so the total
        # length strictly decreases; the guard makes that assumption fail
        # loudly instead of looping
        if guard < 0:
            raise AssertionError("boundary contraction failed to terminate")
        if not u:
            return Element.basis(make(v))
        if not v:
            return Element.basis(make(u))
        side_u, x = u[-1]
        side_v, xp = v[0]
        if side_u != side_v:
            return Element.basis(make(u + v))
        factor = factors[side_u]
        out = Element.zero()
        for t, coeff in factor.product(x, xp).items():
            if t == factor.unit:
                continue
            register_letter(side_u, t)
            out = out + coeff * Element.basis(make(u[:-1] + ((side_u, t),) + v[1:]))
        if factor.conj(x) == xp:
            out = out + word_product(u[:-1], v[1:], guard - 2)
        return out

    def product(la: str, lb: str) -> Element:
        u, v = decode(la), decode(lb)
        return word_product(u, v, len(u) + len(v))

    def conj(la: str) -> str:
        word = decode(la)
        flipped = []
        for side, letter in reversed(word):
            mate = factors[side].conj(letter)
            register_letter(side, mate)
            flipped.append((side, mate))
        return make(tuple(flipped))

    def dim(la: str) -> Fraction:
        out = Fraction(1)
        for side, letter in decode(la):
            out *= factors[side].dim(letter)
        return out

    generators: List[str] = []
    for side, factor in enumerate(factors):
        letters = ([a for a in factor.basis if a != factor.unit]
                   if factor.is_finite else list(factor.generators))
        for letter in letters:
            register_letter(side, letter)
            generators.append(make(((side, letter),)))

    doc = None
    if r1.doc is not None and r2.doc is not None:
        doc = {"kind": "construct", "construct": "free_product",
               "left": r1.doc, "right": r2.doc}
    ring = BasedRing(name=name, unit=_FREE_UNIT, conj=conj, product=product,
                     dim=dim, generators=generators, doc=doc)

    def embed_side(side: int):
        factor = factors[side]

        def embed(s: str) -> str:
            if s == factor.unit:
                return _FREE_UNIT
            factor.dim(s)  # label validation through the factor
            register_letter(side, s)
            return make(((side, s),))

        return embed

    left_doc = right_doc = None
    if doc is not None:
        left_doc = {"kind": "embedding", "canonical": "free_left", "ambient": doc}
        right_doc = {"kind": "embedding", "canonical": "free_right", "ambient": doc}
    left = SubringEmbedding(sub=r1, ambient=ring, mapping=embed_side(0),
                            name=f"{r1.name} ↪ {name}", doc=left_doc)
    right = SubringEmbedding(sub=r2, ambient=ring, mapping=embed_side(1),
                             name=f"{r2.name} ↪ {name}", doc=right_doc)
    return RingWithFactorEmbeddings(ring, left, right)


# ---------------------------------------------------------------------------
# semi-direct products

@dataclass(frozen=True)
class RingAutomorphismAction:
    """A finite group acting on a finite ring by basis permutations."""

    group: FiniteGroupPresentation
    perms: Mapping[str, Mapping[str, str]]

    def to_doc(self) -> dict:
        return {gamma: dict(sorted(self.perms[gamma].items()))
                for gamma in self.group.elements}


def verify_automorphism_action(act: RingAutomorphismAction,
                               target: BasedRing) -> None:
    """Each permutation must be a fusion-ring automorphism and
    γ ↦ permutation a homomorphism; violations raise with a witness."""
    if not target.is_finite:
        raise InvalidInputError("automorphism actions need a finite target ring")
    g = act.group
    basis = set(target.basis)
    for gamma in g.elements:
        perm = act.perms.get(gamma)
        if perm is None:
            raise InvalidInputError(f"action missing permutation for {gamma}")
        if set(perm) != basis or set(perm.values()) != basis:
            raise InvalidInputError(
                f"action of {gamma} is not a permutation of the basis")
    ident = act.perms[g.identity]
    for x in target.basis:
        if ident[x] != x:
            raise InvalidInputError(
                f"identity element acts non-trivially: {x} ↦ {ident[x]}")
    for g1 in g.elements:
        for g2 in g.elements:
            composite = act.perms[g.mul(g1, g2)]
            for x in target.basis:
                if composite[x] != act.perms[g1][act.perms[g2][x]]:
                    raise InvalidInputError(
                        f"action is not a homomorphism at ({g1}, {g2}, {x})")
    for gamma in g.elements:
        perm = act.perms[gamma]
        if perm[target.unit] != target.unit:
            raise InvalidInputError(f"action of {gamma} moves the unit")
        for x in target.basis:
            if perm[target.conj(x)] != target.conj(perm[x]):
                raise InvalidInputError(
                    f"action of {gamma} does not commute with conj at {x}")
            if target.dim(perm[x]) != target.dim(x):
                raise InvalidInputError(
                    f"action of {gamma} changes the dimension of {x}")
        for x in target.basis:
            for y in target.basis:
                expected = target.product(x, y).map_basis(lambda z: perm[z])
                if target.product(perm[x], perm[y]) != expected:
                    raise InvalidInputError(
                        f"action of {gamma} is not multiplicative at ({x}, {y})")


def inversion_action(group: FiniteGroupPresentation,
                     target: BasedRing) -> RingAutomorphismAction:
    """Order-two group acting by the involution of the target ring."""
    if len(group.elements) != 2:
        raise InvalidInputError("inversion action expects a two-element group")
    other = [g for g in group.elements if g != group.identity][0]
    perms = {group.identity: {x: x for x in target.basis},
             other: {x: target.conj(x) for x in target.basis}}
    return RingAutomorphismAction(group, perms)


@dataclass(frozen=True)
class SemidirectProductRing:
    ring: BasedRing
    group_embedding: SubringEmbedding
    target_embedding: SubringEmbedding


def semidirect_product(gamma: FiniteGroupPresentation, target: BasedRing,
                       act: RingAutomorphismAction) -> SemidirectProductRing:
    """Pairs (γ, x) with the twisted fusion
    (γ, x) ⊗ (γ', x') = (γγ', σ(x) ⊗ x') where σ is the action of γ'⁻¹,
    and conj(γ, x) = (γ⁻¹, α_γ(conj x))."""
    verify_automorphism_action(act, target)
    if act.group is not gamma and act.group.elements != gamma.elements:
        raise InvalidInputError("action group does not match the given group")
    name = f"{len(gamma.elements)}-group ⋉ {target.name}"
    make, decode = _pair_registry(name)
    basis = [make(g, x) for g in gamma.elements for x in target.basis]
    unit = make(gamma.identity, target.unit)

    def product(la: str, lb: str) -> Element:
        g1, x = decode(la)
        g2, xp = decode(lb)
        twist = act.perms[gamma.inv(g2)]
        out = Element.zero()
        g12 = gamma.mul(g1, g2)
        for z, coeff in target.product(twist[x], xp).items():
            out = out + coeff * Element.basis(make(g12, z))
        return out

    def conj(la: str) -> str:
        g1, x = decode(la)
        return make(gamma.inv(g1), act.perms[g1][target.conj(x)])

    def dim(la: str) -> Fraction:
        _, x = decode(la)
        return target.dim(x)

    doc = None
    if target.doc is not None:
        doc = {"kind": "construct", "construct": "semidirect_product",
               "group": gamma.to_doc(), "target": target.doc,
               "action": act.to_doc()}
    ring = BasedRing(name=name, unit=unit, conj=conj, product=product,
                     dim=dim, basis=basis, doc=doc)
    group_ring_side = group_ring(gamma)

    def embed_group(g: str) -> str:
        if g not in gamma.inverse:
            raise UnknownBasisError(f"unknown group element {g!r}")
        return make(g, target.unit)

    def embed_target(x: str) -> str:
        target.dim(x)  # label validation
        return make(gamma.identity, x)

    g_doc = t_doc = None
    if doc is not None:
        g_doc = {"kind": "embedding", "canonical": "semidirect_group",
                 "ambient": doc}
        t_doc = {"kind": "embedding", "canonical": "semidirect_target",
                 "ambient": doc}
    group_embedding = SubringEmbedding(sub=group_ring_side, ambient=ring,
                                       mapping=embed_group,
                                       name=f"group ↪ {name}", doc=g_doc)
    target_embedding = SubringEmbedding(sub=target, ambient=ring,
                                        mapping=embed_target,
                                        name=f"{target.name} ↪ {name}",
                                        doc=t_doc)
    return SemidirectProductRing(ring, group_embedding, target_embedding)
