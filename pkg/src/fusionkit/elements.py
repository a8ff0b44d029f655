"""Sparse exact integer linear combinations over string-labeled bases."""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Mapping, Tuple, Union

I64_MAX = 2**63 - 1
I64_MIN = -(2**63)


class UnknownBasisError(ValueError):
    """A label was used against a basis it does not belong to."""


class InvalidInputError(ValueError):
    """Structurally invalid data: broken tables, bad coefficients, empty bases."""


class CertificateDepthError(ValueError):
    """A computation was asked to run past the depth its certificate covers."""


class EmbeddingDataError(ValueError):
    """Embedding data is inconsistent (non-injective map, broken coset relation)."""


def check_coeff(c: int) -> int:
    """Reject non-integers and anything outside the signed 64-bit range.

    Overflow is a hard error, never silent wraparound.
    """
    if not isinstance(c, int) or isinstance(c, bool):
        raise InvalidInputError(f"coefficient {c!r} is not an integer")
    if c > I64_MAX or c < I64_MIN:
        raise OverflowError(f"coefficient {c} exceeds the signed 64-bit range")
    return c


TermsLike = Union[Mapping[str, int], Iterable[Tuple[str, int]]]


class Element:
    """Finitely supported Z-linear combination of basis labels.

    Zero coefficients are never stored, so two elements are equal iff their
    term dictionaries are equal.  All arithmetic is exact; coefficients are
    overflow-checked against the signed 64-bit range.
    Instances are immutable after construction and safe to share.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: TermsLike = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        data: dict = {}
        for label, c in items:
            check_coeff(c)
            if not isinstance(label, str):
                raise InvalidInputError(f"basis label {label!r} is not a string")
            acc = data.get(label, 0) + c
            check_coeff(acc)
            if acc:
                data[label] = acc
            else:
                data.pop(label, None)
        self._terms = data

    @classmethod
    def basis(cls, label: str, coeff: int = 1) -> "Element":
        return cls(((label, coeff),))

    @classmethod
    def zero(cls) -> "Element":
        return cls()

    def coeff(self, label: str) -> int:
        return self._terms.get(label, 0)

    @property
    def support(self) -> Tuple[str, ...]:
        return tuple(sorted(self._terms))

    def items(self) -> Iterator[Tuple[str, int]]:
        """Iterate (label, coefficient) pairs in label order."""
        for label in sorted(self._terms):
            yield label, self._terms[label]

    def is_zero(self) -> bool:
        return not self._terms

    def is_single_basis(self) -> bool:
        """True when the element is one basis label with coefficient 1."""
        return len(self._terms) == 1 and next(iter(self._terms.values())) == 1

    def single_basis_label(self) -> str:
        if not self.is_single_basis():
            raise InvalidInputError(f"{self} is not a single basis element")
        return next(iter(self._terms))

    def map_basis(self, fn: Callable[[str], str]) -> "Element":
        """Relabel the support through ``fn``, merging any collisions."""
        return Element((fn(label), c) for label, c in self._terms.items())

    def __add__(self, other: "Element") -> "Element":
        out = dict(self._terms)
        for label, c in other._terms.items():
            acc = check_coeff(out.get(label, 0) + c)
            if acc:
                out[label] = acc
            else:
                out.pop(label, None)
        res = Element.zero()
        res._terms = out
        return res

    def __neg__(self) -> "Element":
        return Element((label, -c) for label, c in self._terms.items())

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __rmul__(self, k: int) -> "Element":
        check_coeff(k)
        return Element((label, check_coeff(k * c)) for label, c in self._terms.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def format(self, plus: str = " ⊕ ") -> str:
        """Render as a direct sum, e.g. ``x0 ⊕ 2·x2``."""
        if not self._terms:
            return "0"
        parts = []
        for label, c in self.items():
            if c == 1:
                parts.append(label)
            elif c == -1:
                parts.append(f"-{label}")
            else:
                parts.append(f"{c}·{label}")
        return plus.join(parts)

    def __repr__(self) -> str:
        return f"Element({self.format()})"


def require_nonnegative(e: Element, context: str = "") -> Element:
    """Fusion and action data must have non-negative structure constants."""
    for label, c in e.items():
        if c < 0:
            where = f" in {context}" if context else ""
            raise InvalidInputError(f"negative coefficient {c}·{label}{where}")
    return e
