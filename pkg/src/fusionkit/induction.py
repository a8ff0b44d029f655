"""Induction and restriction of based modules along subring embeddings.

Induction needs a divisibility certificate.  The certificate stores the
left-handed decomposition (every ambient i sits in map(s_i) ⊗ l_{t_i});
the tensor product over the subring moves sub factors across from the
right, so induction uses the conjugated, right-handed reading: with
r_t := conj(l_t), every ambient i appears once in r_t ⊗ map(s), and

    α ⊗ (1_{t'} ⊙ j') = Σ_{i'} N(i' in α ⊗ r_{t'}) · 1_{t_{i'}} ⊙ (s_{i'} ⊗ j')

where (t_{i'}, s_{i'}) is the right-handed factorization of i'.  For
commutative ambient rings the two readings coincide.  Without a
certificate the tensor product need not be based, so the construction is
refused rather than approximated.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .elements import (
    CertificateDepthError,
    Element,
    InvalidInputError,
)
from .modules import (
    BasedModule,
    check_module_axioms,
    connected_components,
    is_torsion,
)
from .rings import BasedRing, Verdict
from .subrings import DivisibilityCertificate, SubringEmbedding


def induced_label(t: str, j: str) -> str:
    return f"1_{t}⊙{j}"


class InducedModule(BasedModule):
    """Based module on class representatives × source basis, with provenance."""

    def __init__(self, *, ring: BasedRing, basis, action, pairs: Dict[str, Tuple[str, str]],
                 source: BasedModule, certificate: DivisibilityCertificate,
                 name: str, doc: Optional[dict] = None):
        super().__init__(ring=ring, basis=basis, action=action, name=name, doc=doc)
        self.pairs = pairs
        self.source = source
        self.certificate = certificate

    def pair_of(self, label: str) -> Tuple[str, str]:
        return self.pairs[label]


def induce(n: BasedModule, c: DivisibilityCertificate, *,
           check_depth: int = 4) -> InducedModule:
    """Induced module along the certificate; basis size is exactly
    (number of classes) × (source rank).

    The source must pass its module axioms; action requests that would read
    past the certificate's verified depth are refused.
    """
    e = c.embedding
    if not n.ring.same_as(e.sub):
        raise InvalidInputError(
            f"module {n.name} lives over {n.ring.name}, not the certificate's "
            f"subring {e.sub.name}")
    if not n.is_finite:
        raise InvalidInputError("induction needs a finite source basis")
    pre = check_module_axioms(n, check_depth)
    if pre.is_fails:
        raise InvalidInputError(f"source module fails its axioms: {pre.witness}")
    amb, sub = e.ambient, e.sub
    basis: List[str] = []
    pairs: Dict[str, Tuple[str, str]] = {}
    for t in c.classes:
        for j in n.basis:
            label = induced_label(t, j)
            basis.append(label)
            pairs[label] = (t, j)

    def right_factor(i: str) -> Tuple[str, str]:
        # i sits in conj(l_t) ⊗ map(s) exactly when conj(i) sits in
        # map(conj(s)) ⊗ l_t, which is what the certificate records
        located = c.factorization.get(amb.conj(i))
        if located is None:
            raise CertificateDepthError(
                f"{i} lies outside the certificate's verified depth "
                f"{c.verified_depth}")
        t, s = located
        return t, sub.conj(s)

    def action(alpha: str, label: str) -> Element:
        t, j = pairs[label]
        out = Element.zero()
        for i, coeff in amb.product(alpha, amb.conj(t)).items():
            ti, si = right_factor(i)
            for k, coeff2 in n.action(si, j).items():
                out = out + (coeff * coeff2) * Element.basis(induced_label(ti, k))
        return out

    doc = None
    if n.doc is not None and e.doc is not None:
        doc = {"kind": "module", "induced": {"source": n.doc,
                                             "certificate": c.to_doc()}}
    return InducedModule(ring=amb, basis=basis, action=action, pairs=pairs,
                         source=n, certificate=c,
                         name=f"Ind({n.name})", doc=doc)


def restrict(m: BasedModule, e: SubringEmbedding, *,
             check_depth: int = 4) -> BasedModule:
    """Same basis, action pulled back through the embedding.

    The based axioms survive restriction; they are re-checked at
    ``check_depth`` and a failure is an input error.
    """
    if not m.ring.same_as(e.ambient):
        raise InvalidInputError(
            f"module {m.name} lives over {m.ring.name}, not the embedding's "
            f"ambient ring {e.ambient.name}")

    def action(beta: str, j: str) -> Element:
        return m.action(e.embed(beta), j)

    doc = None
    if m.doc is not None and e.doc is not None:
        doc = {"kind": "module", "restricted": {"source": m.doc,
                                                "embedding": e.doc}}
    out = BasedModule(ring=e.sub,
                      basis=m.basis if m.is_finite else None,
                      action=action, name=f"Res({m.name})", doc=doc,
                      window_fn=(None if m.is_finite else m.basis_up_to_depth))
    verdict = check_module_axioms(out, check_depth)
    if verdict.is_fails:
        raise InvalidInputError(
            f"restriction is not a based module: {verdict.witness}")
    return out


def restrict_and_decompose(m: BasedModule, e: SubringEmbedding,
                           depth: int = 4) -> List[BasedModule]:
    """Split the restricted module along its connected components.

    Each summand is re-verified connected, and verified torsion whenever the
    ambient ring is finite.  Needs a finite module basis and a finite
    subring: on a lazy subring the component structure of a window is not a
    based module, so the computation is refused.
    """
    if not m.is_finite:
        raise InvalidInputError("decomposition needs a finite module basis")
    if not e.sub.is_finite:
        raise InvalidInputError(
            "decomposition along a lazily generated subring is refused: "
            "component closure cannot be certified on a window")
    restricted = restrict(m, e, check_depth=depth)
    components = connected_components(restricted, depth)
    summands: List[BasedModule] = []
    for idx, comp in enumerate(components):
        comp_set = set(comp)
        table: Dict[Tuple[str, str], Element] = {}
        for beta in e.sub.basis:
            if beta == e.sub.unit:
                continue
            for j in comp:
                value = restricted.action(beta, j)
                for lbl, _ in value.items():
                    if lbl not in comp_set:
                        raise InvalidInputError(
                            f"component {idx} is not action-closed at "
                            f"({beta}, {j}): reaches {lbl}")
                table[(beta, j)] = value
        summand = BasedModule(ring=e.sub, basis=comp, action=table,
                              name=f"{restricted.name}[{idx}]")
        if len(connected_components(summand, depth)) != 1:
            raise InvalidInputError(f"summand {idx} failed its connectedness "
                                    "re-verification")
        if m.ring.is_finite:
            verdict = is_torsion(summand, depth)
            if not verdict.is_holds:
                raise InvalidInputError(
                    f"summand {idx} is not torsion: {verdict.witness}")
        summands.append(summand)
    return summands


def standardize_from_induced(n: BasedModule, c: DivisibilityCertificate,
                             witness: Dict[str, str],
                             depth: int = 4) -> Verdict:
    """Extract the isomorphism n ≅ standard sub module from a standardness
    witness for the induced module.

    ``witness`` must map the induced basis bijectively onto the ambient
    basis and intertwine the actions; the pair sent to the ambient unit
    anchors the extraction.  On success the verdict carries the verified
    bijection from the source basis to the sub basis in ``data``.
    """
    e = c.embedding
    sub, amb = e.sub, e.ambient
    ind = induce(n, c, check_depth=depth)
    amb_window = amb.basis_up_to_depth(depth)
    basis = list(ind.basis)
    if sorted(witness) != sorted(basis):
        return Verdict.fails("witness keys do not match the induced basis")
    targets = sorted(witness.values())
    if amb.is_finite:
        if targets != sorted(amb.basis):
            return Verdict.fails(
                "witness is not a bijection onto the ambient basis")
    elif len(set(targets)) != len(targets):
        return Verdict.fails("witness is not injective")
    for alpha in amb_window:
        for x in basis:
            lhs = ind.action(alpha, x).map_basis(lambda y: witness[y])
            rhs = amb.product(alpha, witness[x])
            if lhs != rhs:
                return Verdict.fails(
                    f"witness does not intertwine at ({alpha}, {x}): "
                    f"{lhs.format()} ≠ {rhs.format()}", data=(alpha, x))
    anchor = [x for x in basis if witness[x] == amb.unit]
    if not anchor:
        return Verdict.fails("no induced basis element is sent to the unit")
    x0 = anchor[0]
    swept = {x0}
    for alpha in amb_window:
        for lbl, _ in ind.action(alpha, x0).items():
            swept.add(lbl)
    missing = [x for x in basis if x not in swept]
    if missing:
        return Verdict.unknown(depth, witness=(
            f"sweep from {x0} covers {len(swept)}/{len(basis)} induced basis "
            f"elements within depth {depth}"))
    # the unit-class block carries the source module through the embedding;
    # its image under w is one coset class, and projecting to the sub
    # component of the factorization extracts the isomorphism
    unit_class = [t for t in c.classes if t == amb.unit]
    if not unit_class:
        return Verdict.fails("certificate has no unit-class representative")
    tu = unit_class[0]
    bijection: Dict[str, str] = {}
    for j in n.basis:
        y = witness[induced_label(tu, j)]
        located = c.factorization.get(y)
        if located is None:
            return Verdict.fails(
                f"w(1_{tu}⊙{j}) = {y} has no factorization entry",
                data=(j, y))
        bijection[j] = located[1]
    if len(set(bijection.values())) != len(bijection):
        return Verdict.fails("extracted map is not injective")
    sub_window = sub.basis_up_to_depth(depth)
    for beta in sub_window:
        for j in n.basis:
            lhs = n.action(beta, j).map_basis(lambda k: bijection[k])
            rhs = sub.product(beta, bijection[j])
            if lhs != rhs:
                return Verdict.fails(
                    f"extracted map does not intertwine at ({beta}, {j}): "
                    f"{lhs.format()} ≠ {rhs.format()}", data=(beta, j))
    bound = None if (sub.is_finite and amb.is_finite) else depth
    return Verdict.holds(bound=bound, data=bijection)
