import pytest

from fusionkit import (
    BasedModule,
    Element,
    InvalidInputError,
    act,
    check_module_axioms,
    connected_components,
    is_cofinite,
    is_standard,
    is_torsion,
    restrict,
    standard_module,
    support_counts,
)
from fusionkit.constructions import rep_ring, s3_character_table
from fusionkit import SubringEmbedding


def test_standard_module_axioms(z2, z4, s3):
    for ring in (z2, z4, s3):
        assert check_module_axioms(standard_module(ring), 4).is_holds


def test_regular_action(std_z2):
    assert std_z2.action("g", "e") == Element.basis("g")
    assert act(std_z2, Element({"g": 1, "e": 1}), Element.basis("g")) == \
        Element({"e": 1, "g": 1})


def test_rank1_module(rank1_z2):
    assert check_module_axioms(rank1_z2, 4).is_holds
    # linearity over the unique rank-1 solution
    assert act(rank1_z2, Element({"g": 1, "e": 1}), Element.basis("j")) == \
        Element({"j": 2})


def test_rank1_over_z3(rank1_z3):
    assert check_module_axioms(rank1_z3, 4).is_holds


def test_rank0_rejected(z2):
    with pytest.raises(InvalidInputError):
        BasedModule(ring=z2, basis=[], action={})


def test_doubling_action_fails_associativity(z2):
    m = BasedModule(ring=z2, basis=["j"],
                    action={("g", "j"): Element({"j": 2})})
    verdict = check_module_axioms(m, 4)
    assert verdict.is_fails
    assert verdict.data == ("g", "g", "j")
    assert "4·j" in verdict.witness


def test_missing_action_entry_rejected(z4):
    with pytest.raises(InvalidInputError):
        BasedModule(ring=z4, basis=["j"],
                    action={("a", "j"): Element.basis("j")})


def test_cofinite_finite_ring(rank1_z2, s3):
    assert is_cofinite(rank1_z2, 4).is_holds
    assert is_cofinite(standard_module(s3), 4).is_holds


def test_cofinite_lazy_ring_unknown(su2):
    verdict = is_cofinite(standard_module(su2), 8)
    assert verdict.is_unknown and verdict.bound == 8


def test_cg_support_counts(su2):
    counts = support_counts(standard_module(su2), 8)
    for (j, jp), count in counts.items():
        m, n = int(j[1:]), int(jp[1:])
        assert count <= min(m, n) + 1


def test_components_of_restricted_z4(z2, z4, std_z4):
    emb = SubringEmbedding(sub=z2, ambient=z4, mapping={"e": "e", "g": "a2"})
    restricted = restrict(std_z4, emb)
    parts = connected_components(restricted, 4)
    assert parts == [["e", "a2"], ["a", "a3"]]


def test_standard_module_connected(s3):
    assert len(connected_components(standard_module(s3), 4)) == 1


def test_direct_sum_two_components(z2):
    m = BasedModule(ring=z2, basis=["j1", "j2"],
                    action={("g", "j1"): Element.basis("j1"),
                            ("g", "j2"): Element.basis("j2")})
    assert len(connected_components(m, 4)) == 2
    verdict = is_torsion(m, 4)
    assert verdict.is_fails and "components" in verdict.witness


def test_rank1_is_torsion(rank1_z2):
    assert is_torsion(rank1_z2, 4).is_holds


def test_standard_detection_identity():
    ring = rep_ring(s3_character_table())
    verdict = is_standard(standard_module(ring), 4)
    assert verdict.is_holds
    assert verdict.data == {b: b for b in ring.basis}


def test_standard_detection_rank_mismatch(rank1_z2):
    verdict = is_standard(rank1_z2, 4)
    assert verdict.is_fails
    assert "rank 1 ≠ rank 2" in verdict.witness


def test_standard_witness_roundtrip(z4):
    # relabeled copy of the regular module must be recognized with a
    # coefficient-exact witness
    relabel = {b: f"m{i}" for i, b in enumerate(z4.basis)}
    table = {}
    for alpha in z4.basis:
        if alpha == z4.unit:
            continue
        for b in z4.basis:
            table[(alpha, relabel[b])] = z4.product(alpha, b).map_basis(
                lambda x: relabel[x])
    m = BasedModule(ring=z4, basis=list(relabel.values()), action=table)
    verdict = is_standard(m, 4)
    assert verdict.is_holds
    mapping = verdict.data
    for alpha in z4.basis:
        for j in m.basis:
            assert m.action(alpha, j).map_basis(lambda x: mapping[x]) == \
                z4.product(alpha, mapping[j])


def test_finite_module_over_lazy_ring_not_standard(su2):
    m = BasedModule(ring=su2, basis=["j"],
                    action=lambda alpha, j: Element.basis("j"))
    verdict = is_standard(m, 4)
    assert verdict.is_fails


def test_based_symmetry_failure_detected(z4):
    # a acts as a shift but conj(a) = a3 does not reverse it
    table = {}
    shift = {"e": "a", "a": "a2", "a2": "a3", "a3": "e"}
    for alpha in ("a", "a2", "a3"):
        for j in z4.basis:
            if alpha == "a":
                table[(alpha, j)] = Element.basis(shift[j])
            else:
                table[(alpha, j)] = Element.basis(j)
    m = BasedModule(ring=z4, basis=list(z4.basis), action=table)
    verdict = check_module_axioms(m, 4)
    assert verdict.is_fails
