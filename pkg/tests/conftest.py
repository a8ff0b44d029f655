import pytest

from fusionkit import (
    BasedModule,
    Element,
    SubringEmbedding,
    cyclic_group,
    find_divisibility_certificate,
    group_ring,
    standard_module,
    su2_ring,
    symmetric_group_3,
)


@pytest.fixture
def z2():
    return group_ring(cyclic_group(2, generator="g"))


@pytest.fixture
def z3():
    return group_ring(cyclic_group(3))


@pytest.fixture
def z4():
    return group_ring(cyclic_group(4))


@pytest.fixture
def s3():
    return group_ring(symmetric_group_3())


@pytest.fixture
def su2():
    return su2_ring()


@pytest.fixture
def z2_in_z4(z2, z4):
    return SubringEmbedding(sub=z2, ambient=z4, mapping={"e": "e", "g": "a2"})


@pytest.fixture
def z2_in_z4_cert(z2_in_z4):
    return find_divisibility_certificate(z2_in_z4, 4).certificate


@pytest.fixture
def z3_in_s3(z3, s3):
    return SubringEmbedding(sub=z3, ambient=s3,
                            mapping={"e": "e", "a": "r", "a2": "rr"})


@pytest.fixture
def rank1_z2(z2):
    return BasedModule(ring=z2, basis=["j"],
                       action={("g", "j"): Element.basis("j")}, name="rank1")


@pytest.fixture
def rank1_z3(z3):
    return BasedModule(ring=z3, basis=["j"],
                       action={("a", "j"): Element.basis("j"),
                               ("a2", "j"): Element.basis("j")}, name="rank1")


@pytest.fixture
def std_z2(z2):
    return standard_module(z2)


@pytest.fixture
def std_z4(z4):
    return standard_module(z4)
