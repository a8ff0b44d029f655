"""Based rings with exact fusion data: products, involution, axiom checks.

A based ring here is a free Z-module on a pointed involutive basis with an
associative product whose structure constants are non-negative integers and
whose unit appears in conj(a) ⊗ b exactly when a = b.  Adding a positive,
multiplicative, conjugation-invariant dimension function makes it a fusion
ring.  Bases are either finite and explicit, or lazy: generated on demand by
closing a generator set under products, depth by depth.

All values are immutable after construction.  The product cache tolerates
concurrent readers; a duplicate fill computes the same value, so races are
harmless.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Optional, Sequence, Tuple

from .elements import (
    Element,
    InvalidInputError,
    UnknownBasisError,
    require_nonnegative,
)

HOLDS = "holds"
FAILS = "fails"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """Three-valued outcome of a bounded check.

    ``holds`` with ``bound=None`` is exhaustive; with ``bound=k`` it means
    every instance checked within depth k passed, and each such instance is
    decided exactly.  ``unknown`` is reserved for properties whose instances
    cannot be decided by bounded search at all (e.g. co-finiteness over an
    infinite basis).  ``fails`` always carries a concrete witness that
    re-evaluation reproduces.
    """

    status: str
    witness: Optional[str] = None
    bound: Optional[int] = None
    data: Any = None

    @classmethod
    def holds(cls, bound: Optional[int] = None, witness: Optional[str] = None,
              data: Any = None) -> "Verdict":
        return cls(HOLDS, witness, bound, data)

    @classmethod
    def fails(cls, witness: str, data: Any = None) -> "Verdict":
        return cls(FAILS, witness, None, data)

    @classmethod
    def unknown(cls, bound: int, witness: Optional[str] = None) -> "Verdict":
        return cls(UNKNOWN, witness, bound)

    @property
    def is_holds(self) -> bool:
        return self.status == HOLDS

    @property
    def is_fails(self) -> bool:
        return self.status == FAILS

    @property
    def is_unknown(self) -> bool:
        return self.status == UNKNOWN

    def exit_code(self) -> int:
        return {HOLDS: 0, FAILS: 1, UNKNOWN: 2}[self.status]

    @classmethod
    def combine(cls, *verdicts: "Verdict") -> "Verdict":
        """Conjunction with three-valued propagation: any Fails wins, then Unknown."""
        for v in verdicts:
            if v.is_fails:
                return v
        unknowns = [v for v in verdicts if v.is_unknown]
        if unknowns:
            return unknowns[0]
        bounds = [v.bound for v in verdicts if v.bound is not None]
        return cls.holds(bound=max(bounds) if bounds else None)

    def to_doc(self) -> dict:
        doc: dict = {"status": self.status}
        if self.witness is not None:
            doc["witness"] = self.witness
        if self.bound is not None:
            doc["bound"] = self.bound
        if self.data is not None:
            doc["data"] = _plain(self.data)
        return doc


def _plain(value: Any) -> Any:
    if isinstance(value, Element):
        return dict(value.items())
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, Fraction):
        return [value.numerator, value.denominator]
    return value


class BasedRing:
    """Exact based/fusion ring with a finite or lazily generated basis.

    The product, involution and dimension are supplied as callables over
    labels; products are memoized.  For lazy rings ``generators`` seeds the
    depth-by-depth basis enumeration: depth k holds every label appearing in
    a product of at most k generators, ordered by (depth of first
    appearance, label).
    """

    def __init__(self, *, name: str, unit: str,
                 conj: Callable[[str], str],
                 product: Callable[[str, str], Element],
                 dim: Callable[[str], Fraction],
                 basis: Optional[Sequence[str]] = None,
                 generators: Optional[Sequence[str]] = None,
                 doc: Optional[dict] = None):
        self.name = name
        self.unit = unit
        self._conj_fn = conj
        self._product_fn = product
        self._dim_fn = dim
        self.doc = doc
        if basis is not None:
            self._basis: Optional[Tuple[str, ...]] = tuple(basis)
            if len(set(self._basis)) != len(self._basis):
                raise InvalidInputError(f"ring {name}: duplicate basis labels")
            if unit not in self._basis:
                raise InvalidInputError(f"ring {name}: unit {unit!r} not in basis")
            self.generators: Tuple[str, ...] = ()
        else:
            if not generators:
                raise InvalidInputError(f"ring {name}: lazy ring needs generators")
            self._basis = None
            self.generators = tuple(generators)
        self._cache: dict = {}
        self._levels: list = [[unit]]
        self._level_seen = {unit}

    @property
    def is_finite(self) -> bool:
        return self._basis is not None

    @property
    def basis(self) -> Tuple[str, ...]:
        if self._basis is None:
            raise InvalidInputError(f"ring {self.name} has an infinite basis")
        return self._basis

    def conj(self, label: str) -> str:
        return self._conj_fn(label)

    def dim(self, label: str) -> Fraction:
        d = self._dim_fn(label)
        return d if isinstance(d, Fraction) else Fraction(d)

    def product(self, a: str, b: str) -> Element:
        """Decomposition of a ⊗ b into basis labels with multiplicities."""
        key = (a, b)
        hit = self._cache.get(key)
        if hit is None:
            hit = require_nonnegative(self._product_fn(a, b), f"{a} ⊗ {b}")
            self._cache[key] = hit
        return hit

    def basis_up_to_depth(self, depth: int) -> list:
        """Basis window: full basis for finite rings, product closure otherwise."""
        if self._basis is not None:
            return list(self._basis)
        if depth < 0:
            raise InvalidInputError("depth must be non-negative")
        while len(self._levels) <= depth:
            fresh = set()
            for w in self._levels[-1]:
                for g in self.generators:
                    for label, _ in self.product(w, g).items():
                        if label not in self._level_seen:
                            fresh.add(label)
            level = sorted(fresh)
            self._level_seen.update(level)
            self._levels.append(level)
        out: list = []
        for level in self._levels[: depth + 1]:
            out.extend(level)
        return out

    def contains(self, label: str) -> bool:
        if self._basis is not None:
            return label in self._basis
        return label in self._level_seen

    def same_as(self, other: "BasedRing") -> bool:
        """Identity, or equality of serialized definitions when both exist."""
        if self is other:
            return True
        if self.doc is not None and other.doc is not None:
            return self.doc == other.doc
        return False

    def __repr__(self) -> str:
        kind = f"finite rank {len(self._basis)}" if self._basis is not None else "lazy"
        return f"BasedRing({self.name}, {kind})"


def tensor(ring: BasedRing, a: Element, b: Element) -> Element:
    """Bilinear extension of the fusion product to arbitrary elements."""
    out = Element.zero()
    for la, ca in a.items():
        for lb, cb in b.items():
            out = out + ca * cb * ring.product(la, lb)
    return out


def conjugate(ring: BasedRing, a: Element) -> Element:
    """Coefficient-preserving relabeling through the involution."""
    return a.map_basis(ring.conj)


def _bounded(ring: BasedRing, depth: int) -> Optional[int]:
    return None if ring.is_finite else depth


def check_ring_axioms(ring: BasedRing, depth: int = 4) -> Verdict:
    """Verify unit, involution, the unit-multiplicity axiom, conjugation
    anti-multiplicativity and associativity on all tuples within depth.

    Exhaustive for finite rings; for lazy rings the verdict records the
    window it covered.
    """
    if depth < 1:
        raise InvalidInputError("depth must be >= 1")
    window = ring.basis_up_to_depth(depth)
    if ring.conj(ring.unit) != ring.unit:
        return Verdict.fails(
            f"conj(unit) = {ring.conj(ring.unit)} ≠ {ring.unit}")
    for a in window:
        cc = ring.conj(ring.conj(a))
        if cc != a:
            return Verdict.fails(f"conj is not involutive at {a}: conj(conj({a})) = {cc}",
                                 data=(a,))
        if ring.product(ring.unit, a) != Element.basis(a):
            return Verdict.fails(
                f"unit not left-neutral at {a}: \U0001d7d9 ⊗ {a} = "
                f"{ring.product(ring.unit, a).format()}", data=(a,))
        if ring.product(a, ring.unit) != Element.basis(a):
            return Verdict.fails(
                f"unit not right-neutral at {a}: {a} ⊗ \U0001d7d9 = "
                f"{ring.product(a, ring.unit).format()}", data=(a,))
    for a in window:
        ca = ring.conj(a)
        for b in window:
            got = ring.product(ca, b).coeff(ring.unit)
            want = 1 if a == b else 0
            if got != want:
                return Verdict.fails(
                    f"unit coefficient of conj({a}) ⊗ {b} is {got}, expected {want}",
                    data=(a, b))
            lhs = conjugate(ring, ring.product(a, b))
            rhs = ring.product(ring.conj(b), ring.conj(a))
            if lhs != rhs:
                return Verdict.fails(
                    f"conj({a} ⊗ {b}) = {lhs.format()} ≠ "
                    f"conj({b}) ⊗ conj({a}) = {rhs.format()}", data=(a, b))
    for a, b, c in itertools.product(window, repeat=3):
        left = tensor(ring, ring.product(a, b), Element.basis(c))
        right = tensor(ring, Element.basis(a), ring.product(b, c))
        if left != right:
            return Verdict.fails(
                f"associativity fails at ({a}, {b}, {c}): "
                f"({a}⊗{b})⊗{c} = {left.format()} ≠ "
                f"{a}⊗({b}⊗{c}) = {right.format()}", data=(a, b, c))
    return Verdict.holds(bound=_bounded(ring, depth))


def check_dimension(ring: BasedRing, depth: int = 4) -> Verdict:
    """Verify positivity, conjugation invariance and multiplicativity of the
    dimension function on all pairs within depth."""
    if depth < 1:
        raise InvalidInputError("depth must be >= 1")
    window = ring.basis_up_to_depth(depth)
    if ring.dim(ring.unit) != 1:
        return Verdict.fails(f"d(unit) = {ring.dim(ring.unit)} ≠ 1")
    for a in window:
        da = ring.dim(a)
        if da <= 0:
            return Verdict.fails(f"d({a}) = {da} is not positive", data=(a,))
        if ring.dim(ring.conj(a)) != da:
            return Verdict.fails(
                f"d(conj({a})) = {ring.dim(ring.conj(a))} ≠ d({a}) = {da}",
                data=(a,))
    for a in window:
        for b in window:
            total = sum((c * ring.dim(lbl) for lbl, c in ring.product(a, b).items()),
                        Fraction(0))
            if total != ring.dim(a) * ring.dim(b):
                return Verdict.fails(
                    f"dimension not multiplicative at ({a}, {b}): "
                    f"d({a})·d({b}) = {ring.dim(a) * ring.dim(b)} but "
                    f"Σ N·d = {total}", data=(a, b))
    return Verdict.holds(bound=_bounded(ring, depth))


def explicit_ring(*, name: str, basis: Iterable[str], unit: str,
                  conj: dict, dim: dict, fusion: dict,
                  doc: Optional[dict] = None) -> BasedRing:
    """Build a finite ring from explicit tables.

    ``fusion`` maps non-unit label pairs to Elements; unit products are
    implied.  Missing pairs are an error when the product is requested, never
    a silent zero.
    """
    basis = tuple(basis)
    basis_set = set(basis)
    for lbl, target in conj.items():
        if lbl not in basis_set or target not in basis_set:
            raise InvalidInputError(f"conj table references unknown label "
                                    f"{lbl!r} → {target!r}")
    for lbl in basis:
        if lbl not in conj:
            raise InvalidInputError(f"conj table missing entry for {lbl!r}")
        if lbl not in dim:
            raise InvalidInputError(f"dim table missing entry for {lbl!r}")

    def product_fn(a: str, b: str) -> Element:
        if a not in basis_set:
            raise UnknownBasisError(f"unknown basis label {a!r} in ring {name}")
        if b not in basis_set:
            raise UnknownBasisError(f"unknown basis label {b!r} in ring {name}")
        if a == unit:
            return Element.basis(b)
        if b == unit:
            return Element.basis(a)
        try:
            value = fusion[(a, b)]
        except KeyError:
            raise InvalidInputError(
                f"fusion table has no entry for ({a}, {b}); "
                "missing pairs are undefined, not zero") from None
        for lbl, _ in value.items():
            if lbl not in basis_set:
                raise InvalidInputError(
                    f"fusion entry ({a}, {b}) references unknown label {lbl!r}")
        return value

    def conj_fn(a: str) -> str:
        if a not in basis_set:
            raise UnknownBasisError(f"unknown basis label {a!r} in ring {name}")
        return conj[a]

    def dim_fn(a: str) -> Fraction:
        if a not in basis_set:
            raise UnknownBasisError(f"unknown basis label {a!r} in ring {name}")
        d = dim[a]
        return d if isinstance(d, Fraction) else Fraction(d)

    return BasedRing(name=name, unit=unit, conj=conj_fn, product=product_fn,
                     dim=dim_fn, basis=basis, doc=doc)
