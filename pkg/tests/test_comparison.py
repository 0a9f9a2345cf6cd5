import random

import pytest

from okc.comparison import (
    CompleteIntersection,
    NonTransverseError,
    chow_oracle,
    enumerate_complete_intersections,
    fundamental_class_CK,
    fundamental_triple,
    lci_pullback_check,
    theta_plus,
    theta_times,
    tor_formula_check,
    verify_fundamental_triangle,
)
from okc.proj import ConnectiveClass, MultiProj, chow_ring, gr_map, k_ring

CONIC = CompleteIntersection.of((2,), [(2,)])


def test_fundamental_class_examples():
    ck = fundamental_class_CK(CONIC)
    assert (ck.level, str(ck.value)) == (1, "2*x - x^2")
    ck = fundamental_class_CK(CompleteIntersection.of((2,), []))
    assert (ck.level, ck.value) == (2, 1)
    ck = fundamental_class_CK(CompleteIntersection.of((3,), [(1,), (1,)]))
    assert (ck.level, str(ck.value)) == (1, "x^2")


def test_theta_examples():
    assert str(theta_times(fundamental_class_CK(CONIC))) == "2*beta*x - beta*x^2"
    point = CompleteIntersection.of((2,), [(1,), (1,)])
    assert str(theta_times(fundamental_class_CK(point))) == "x^2"
    assert str(theta_times(fundamental_class_CK(CompleteIntersection.of((2,), [])))) == "beta^2"
    assert str(theta_plus(fundamental_class_CK(CONIC))) == "2*h"
    curve = CompleteIntersection.of((1, 2), [(2, 3)])
    assert str(theta_plus(fundamental_class_CK(curve))) == "2*h1 + 3*h2"


def test_chow_oracle_examples():
    assert str(chow_oracle(CONIC)) == "2*h"
    assert str(chow_oracle(CompleteIntersection.of((3,), [(2,), (3,)]))) == "6*h^2"
    assert chow_oracle(CompleteIntersection.of((1, 1), [])) == 1


def test_triangle_examples():
    assert verify_fundamental_triangle(CONIC).passed
    assert verify_fundamental_triangle(CompleteIntersection.of((1, 2), [(2, 3), (1, 1)])).passed
    assert verify_fundamental_triangle(CompleteIntersection.of((4,), [])).passed


def test_invalid_cis():
    with pytest.raises(ValueError):
        CompleteIntersection.of((1,), [(1,), (1,)])
    with pytest.raises(ValueError):
        CompleteIntersection.of((2,), [(0,)])
    with pytest.raises(ValueError):
        CompleteIntersection.of((2,), [(1, 1)])


def test_lci_pullbacks():
    rep = lci_pullback_check("projection", CONIC, MultiProj((2, 1)), factors=(0,))
    assert rep.passed
    assert rep.checks[0].lhs == "(2, 2*x1 - x1^2)"
    rep = lci_pullback_check("linear", CONIC, MultiProj((1,)))
    assert rep.passed
    assert rep.checks[0].lhs == "(0, 2*x)"
    assert lci_pullback_check("linear", CONIC, MultiProj((2,))).passed
    with pytest.raises(NonTransverseError):
        lci_pullback_check("linear", CompleteIntersection.of((2,), [(1,), (1,)]), MultiProj((1,)))
    with pytest.raises(ValueError):
        lci_pullback_check("blowup", CONIC, MultiProj((2,)))


def test_tor_formula():
    x = k_ring(MultiProj((2,))).gen("x")
    P2 = MultiProj((2,))
    rep = tor_formula_check(P2, (1,), x)
    assert rep.passed and rep.checks[0].lhs == "x^2"
    rep = tor_formula_check(P2, (1,), x**2)
    assert rep.passed and rep.checks[0].lhs == "0"
    assert tor_formula_check(P2, (1,), k_ring(P2).zero()).passed
    with pytest.raises(ValueError):
        tor_formula_check(P2, (1,), 1 + x)


def test_enumeration_counts():
    # frozen: one factor, d <= 6, c <= 3, entries <= 3
    assert sum(1 for _ in enumerate_complete_intersections(max_factors=1)) == 94
    cases = list(enumerate_complete_intersections(max_dim=3, max_codim=2, max_entry=2))
    assert all(verify_fundamental_triangle(X).passed for X in cases)


def test_triple_invariants_seeded():
    rng = random.Random(8)
    for _ in range(150):
        dims = tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 3)))
        P = MultiProj(dims)
        c = rng.randint(0, min(3, P.d))
        degs = []
        while len(degs) < c:
            b = tuple(rng.randint(0, 3) for _ in dims)
            if any(b):
                degs.append(b)
        X = CompleteIntersection(P, tuple(degs))
        t = fundamental_triple(X)
        assert t.g.degrees() in ([], [X.dim])
        assert t.ch == gr_map(P, t.ck)
        # leading terms multiply when the codimensions add up to at most d
        if c >= 2:
            A = CompleteIntersection(P, tuple(degs[:1]))
            B = CompleteIntersection(P, tuple(degs[1:]))
            assert theta_plus(fundamental_class_CK(A)) * theta_plus(fundamental_class_CK(B)) == t.ch


def test_pullback_chain_seeded():
    # projection followed by a linear embedding
    rng = random.Random(31)
    for _ in range(60):
        d = rng.randint(2, 4)
        X = CompleteIntersection.of((d,), [(rng.randint(1, 3),) for _ in range(rng.randint(0, 2))])
        e = rng.randint(1, 2)
        Q = MultiProj((d, e))
        assert lci_pullback_check("projection", X, Q, factors=(0,)).passed
        Y = CompleteIntersection(Q, tuple((b[0], 0) for b in X.degrees))
        sub = MultiProj((rng.randint(len(X.degrees), d), e))
        assert lci_pullback_check("linear", Y, sub).passed
