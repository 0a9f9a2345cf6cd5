import random

import pytest

from okc.fgl import ZZ_BETA, fgl_additive, fgl_multiplicative, multi_sum
from okc.lazard import (
    GradingError,
    RelationNotKilledError,
    RingMap,
    apply_map,
    associativity_relations,
    classifying_map,
    free_lazard_ring,
    lazard_truncation,
    universal_fgl,
)


def partitions(n):
    # independent count by dynamic programming over part sizes
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for k in range(part, n + 1):
            table[k] += table[k - part]
    return table[n]


def test_universal_law_coefficient_table():
    F = universal_fgl(2)
    assert str(F.series()) == "u + v + a11*u*v + a12*u^2*v + a12*u*v^2"
    assert F.coeff(1, 2) == F.coeff(2, 1)


def test_low_degree_ranks():
    L = lazard_truncation(3)
    assert L.ranks() == [1, 1, 2, 3]
    assert lazard_truncation(1).ranks() == [1, 1]
    assert all(t == () for t in L.torsion())


@pytest.mark.parametrize("n", range(7))
def test_ranks_match_partition_numbers(n):
    L = lazard_truncation(6)
    assert L.pieces[n].rank == partitions(n)
    assert L.pieces[n].torsion == ()


def test_first_relation_is_degree_three():
    rels = associativity_relations(3)
    degrees = sorted(-next(iter(r.weights())) for r in rels)
    assert degrees[0] == 3


def test_to_json_schema():
    data = lazard_truncation(2).to_json()
    assert [d["degree"] for d in data] == [0, 1, 2]
    assert data[2] == {"degree": 2, "monomials": ["a12", "a11^2"], "rank": 2, "torsion": []}


def test_classifying_maps():
    L = lazard_truncation(4)
    phi = classifying_map(fgl_multiplicative(4), L)
    beta = phi.target.gen("beta")
    assert phi.images["a11"] == -beta
    assert all(not v for k, v in phi.images.items() if k != "a11")
    a11 = L.gen(1, 1)
    assert phi(a11 * a11) == beta**2
    psi = classifying_map(fgl_additive(4), L)
    assert all(not v for v in psi.images.values())
    assert psi(L.ring.one()) == 1
    assert not psi(a11**2)


def test_pushforward_of_universal_law_is_multiplicative():
    L = lazard_truncation(4)
    phi = classifying_map(fgl_multiplicative(4), L)
    image = apply_map(phi, L.fgl())
    assert str(image.series()) == "u + v - beta*u*v"
    S = multi_sum(L.fgl(), (1, 1))
    assert str(apply_map(phi, S)) == "u1 + u2 - beta*u1*u2"


def test_bad_maps_rejected():
    L = lazard_truncation(3)
    target = ZZ_BETA.truncate_weight(3)
    beta = target.gen("beta")
    zero = {name: target.zero() for name in L.free_ring.variables}
    with pytest.raises(GradingError):
        RingMap(L, target, {**zero, "a11": beta**2})
    with pytest.raises(RelationNotKilledError):
        RingMap(L, target, {**zero, "a11": -beta, "a12": beta**2})


def test_map_is_a_ring_homomorphism_seeded():
    L = lazard_truncation(5)
    phi = classifying_map(fgl_multiplicative(5), L)
    free = free_lazard_ring(5)
    rng = random.Random(3)
    gens = [L.ring.gen(v) for v in free.variables]
    for _ in range(100):
        p = sum((g * rng.randint(-3, 3) for g in rng.sample(gens, 3)), L.ring.zero())
        q = sum((g * rng.randint(-3, 3) for g in rng.sample(gens, 3)), L.ring.zero())
        assert phi(p * q) == phi(p) * phi(q)
        assert phi(p + q) == phi(p) + phi(q)


def test_normal_form_is_canonical():
    L = lazard_truncation(4)
    rel = next(r for r in L.relations if next(iter(r.weights())) == -3)
    assert not L.element(rel)
    assert not L.element(rel * L.free_ring.gen("a11"))
    x = L.gen(1, 3) + L.gen(2, 2)
    assert L.element(x.lift(L.free_ring) + rel) == x
