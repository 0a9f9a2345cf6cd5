"""Simple normal crossing divisors on multiprojective spaces and their FGL divisor classes.

A divisor ``D = sum n_i D_i`` is recorded combinatorially: each component is
a hypersurface of multidegree ``a^(i)`` in general position, so every
stratum ``D_I`` is a complete intersection with K-class
``prod_{i in I} (1 - [O(-a^(i))])``.  All identities are checked after
pushing forward into the ambient space.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Sequence

from .algebra import Poly
from .fgl import (
    FormalGroupLaw,
    TruncSeries,
    fgl_additive,
    fgl_multiplicative,
    formal_sum,
    multi_sum,
    support_decompose,
)
from .proj import (
    BMClass,
    ConnectiveClass,
    MultiProj,
    bm_ring,
    chern_multiplier,
    chern_operator,
    chow_ring,
    class_of_bundle,
    gr_map,
    k_ring,
)
from .report import Check, Report

__all__ = [
    "Component",
    "SNCConfig",
    "DivisorClassResult",
    "TruncationTooSmallError",
    "GENERATOR_VERSION",
    "random_config",
    "required_truncation",
    "structure_sheaf_class",
    "stratum_class",
    "divisor_class",
    "verify_divclass",
    "verify_recursion",
    "verify_series_recursion",
    "chow_divisor_check",
    "additive_shadow",
    "load_config",
]

# Bump whenever random_config changes what a seed produces.
GENERATOR_VERSION = 1


class TruncationTooSmallError(ValueError):
    pass


@dataclass(frozen=True)
class Component:
    multidegree: tuple[int, ...]
    multiplicity: int

    def to_json(self) -> dict:
        return {"multidegree": list(self.multidegree), "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class SNCConfig:
    ambient: MultiProj
    components: tuple[Component, ...]

    def __post_init__(self):
        comps = tuple(
            c if isinstance(c, Component) else Component(tuple(c[0]), int(c[1])) for c in self.components
        )
        for c in comps:
            a = tuple(int(x) for x in c.multidegree)
            if len(a) != self.ambient.s:
                raise ValueError(f"multidegree {a} does not match {self.ambient}")
            if any(x < 0 for x in a) or not any(a):
                raise ValueError(f"multidegree {a} is not effective and nonzero")
            if c.multiplicity < 1:
                raise ValueError(f"multiplicity {c.multiplicity} must be at least 1")
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, dims: Sequence[int], components: Sequence[tuple[Sequence[int], int]]) -> "SNCConfig":
        return cls(MultiProj(tuple(dims)), tuple(Component(tuple(a), n) for a, n in components))

    @property
    def r(self) -> int:
        return len(self.components)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(c.multiplicity for c in self.components)

    def without_last(self) -> "SNCConfig":
        """``D - D_r``; the last component disappears when its multiplicity was 1."""
        *head, last = self.components
        if last.multiplicity > 1:
            head.append(Component(last.multidegree, last.multiplicity - 1))
        return SNCConfig(self.ambient, tuple(head))

    def to_json(self) -> dict:
        return {"dims": list(self.ambient.dims), "components": [c.to_json() for c in self.components]}

    @classmethod
    def from_json(cls, data: dict) -> "SNCConfig":
        try:
            dims = tuple(int(x) for x in data["dims"])
            comps = tuple(
                Component(tuple(int(x) for x in c["multidegree"]), int(c["multiplicity"]))
                for c in data["components"]
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed divisor config: {exc}") from exc
        if not comps:
            raise ValueError("a divisor config needs at least one component")
        return cls(MultiProj(dims), comps)

    def __str__(self):
        parts = [f"{c.multiplicity}*D{list(c.multidegree)}" for c in self.components]
        return f"{' + '.join(parts) or '0'} on {self.ambient}"


def random_config(rng: random.Random, max_s: int = 3, max_dim: int = 4, max_r: int = 4, max_mult: int = 3, max_entry: int = 2) -> SNCConfig:
    """Uniform draw from the desk-scale family (generator version 1)."""
    s = rng.randint(1, max_s)
    dims = [rng.randint(0, max_dim) for _ in range(s)]
    if not any(dims):
        dims[rng.randrange(s)] = rng.randint(1, max_dim)
    comps = []
    for _ in range(rng.randint(1, max_r)):
        while True:
            a = tuple(rng.randint(0, max_entry) for _ in range(s))
            if any(a):
                break
        comps.append(Component(a, rng.randint(1, max_mult)))
    return SNCConfig(MultiProj(tuple(dims)), tuple(comps))


def required_truncation(D: SNCConfig) -> int:
    """Series order needed to extract every ``G_I`` that can act nontrivially.

    ``(sum n_i) * max|a|_1 + 1`` covers the whole multiplicative series; terms
    of degree above ``dim`` vanish on the ambient space anyway.
    """
    if not D.components:
        return 1
    bound = sum(D.multiplicities) * max(sum(c.multidegree) for c in D.components) + 1
    return max(1, min(bound, D.ambient.d))


def structure_sheaf_class(D: SNCConfig) -> Poly:
    """``[O_D] = 1 - prod [O(-n_i a^(i))]`` in the ambient K-ring."""
    P = D.ambient
    prod = k_ring(P).one()
    for c in D.components:
        prod = prod * class_of_bundle(P, [-c.multiplicity * x for x in c.multidegree])
    return 1 - prod


def _y(P: MultiProj, a: Sequence[int]) -> Poly:
    return 1 - class_of_bundle(P, [-x for x in a])


def stratum_class(D: SNCConfig, I: Sequence[int]) -> Poly:
    """K-class of ``D_I``; ``I`` holds 1-based component indices."""
    I = tuple(I)
    if not I or any(not 1 <= i <= D.r for i in I) or len(set(I)) != len(I):
        raise ValueError(f"bad stratum index set {I} for {D.r} components")
    out = k_ring(D.ambient).one()
    for i in I:
        out = out * _y(D.ambient, D.components[i - 1].multidegree)
    return out


@dataclass(frozen=True)
class DivisorClassResult:
    config: SNCConfig
    law: str
    contributions: dict[tuple[int, ...], BMClass]
    total: BMClass
    expected: BMClass

    @property
    def verified(self) -> bool:
        return self.total == self.expected

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "law": self.law,
            "contributions": [
                {"subset": list(I), "class": str(c), "json": c.to_json()} for I, c in self.contributions.items()
            ],
            "total": str(self.total),
            "expected": str(self.expected),
            "verified": self.verified,
        }


def _law_for(D: SNCConfig, F: FormalGroupLaw | None) -> FormalGroupLaw:
    need = required_truncation(D)
    if F is None:
        return fgl_multiplicative(need)
    if F.ring.variables not in ((), ("beta",)):
        raise ValueError(f"divisor classes need a law over Z or Z[beta], not {F.ring}")
    if F.trunc < need:
        raise TruncationTooSmallError(f"law truncated at {F.trunc}, need {need} to extract every G_I")
    return F.with_trunc(need)


def divisor_class(D: SNCConfig, F: FormalGroupLaw | None = None) -> DivisorClassResult:
    """Evaluate ``sum_I i_I* G_I(c1(L_I))(1_{D_I})`` pushed into the ambient space.

    ``F`` defaults to the multiplicative law.  ``expected`` is
    ``beta^(d-1) [O_D]``.
    """
    P = D.ambient
    R = bm_ring(P)
    expected = BMClass.from_k(P, structure_sheaf_class(D), P.d - 1)
    if not D.components:
        zero = BMClass.zero(P)
        return DivisorClassResult(D, "none", {}, zero, expected)
    F = _law_for(D, F)
    series = multi_sum(F, D.multiplicities)
    G = support_decompose(series)
    ops = {name: chern_multiplier(P, c.multidegree) for name, c in zip(series.names, D.components)}
    contributions: dict[tuple[int, ...], BMClass] = {}
    total = BMClass.zero(P)
    for I, G_I in G.items():
        unit = BMClass.from_k(P, stratum_class(D, I), P.d - len(I))
        if not unit:
            continue
        # the Chern operators act by multiplication, so evaluating G_I at them is a substitution
        op = G_I.poly.substitute(R, ops)
        value = BMClass(P, op * unit.poly)
        if value:
            contributions[I] = value
            total = total + value
    return DivisorClassResult(D, F.name or "law", contributions, total, expected)


def verify_divclass(D: SNCConfig) -> Report:
    res = divisor_class(D)
    return Report(
        f"divisor class {D}",
        [Check("[D -> |D|] = beta^(d-1) [O_D]", str(res.total), str(res.expected), res.verified)],
    )


def verify_recursion(D: SNCConfig) -> Report:
    """``[D] = [D'] + [D_r] - beta * c1(O(D_r))([D'])`` with ``D' = D - D_r``."""
    P = D.ambient
    lhs = divisor_class(D).total
    prev = divisor_class(D.without_last()).total if D.without_last().components else BMClass.zero(P)
    last = D.components[-1]
    beta = bm_ring(P).gen("beta")
    single = BMClass.from_k(P, _y(P, last.multidegree), P.d - 1)
    rhs = prev + single - chern_operator(P, last.multidegree, prev) * beta
    checks = [Check("divisor class recursion", str(lhs), str(rhs), lhs == rhs)]
    checks.append(verify_series_recursion(D.multiplicities, required_truncation(D)).checks[0])
    return Report(f"recursion {D}", checks)


def verify_series_recursion(multiplicities: Sequence[int], trunc: int, F: FormalGroupLaw | None = None) -> Report:
    """``F_{n_1..n_r} = F(F_{n_1..n_r - 1}, u_r)`` as truncated series."""
    ns = list(multiplicities)
    F = F if F is not None else fgl_multiplicative(trunc)
    lhs = multi_sum(F, ns)
    names = lhs.names
    if ns[-1] > 1:
        prev = multi_sum(F, ns[:-1] + [ns[-1] - 1], names)
    elif len(ns) > 1:
        prev = multi_sum(F, ns[:-1], names[:-1])
        prev = TruncSeries(F.ring, names, F.trunc, prev.poly.lift(lhs.ring))
    else:
        prev = TruncSeries(F.ring, names, F.trunc)
    u_r = TruncSeries.var(F.ring, names, F.trunc, names[-1])
    rhs = formal_sum(F, prev, u_r)
    return Report(f"series recursion {tuple(ns)}", [Check("F_n = F(F_n', u_r)", str(lhs), str(rhs), lhs == rhs)])


def _cycle_of(D: SNCConfig) -> Poly:
    C = chow_ring(D.ambient)
    out = C.zero()
    for c in D.components:
        for h, a in zip(C.gens(), c.multidegree):
            out = out + h * (c.multiplicity * a)
    return out


def chow_divisor_check(D: SNCConfig) -> Report:
    """Leading term of ``[O_D]`` at level ``d - 1`` against ``sum n_i [D_i]`` in CH."""
    P = D.ambient
    lhs = gr_map(P, ConnectiveClass(P, P.d - 1, structure_sheaf_class(D)))
    rhs = _cycle_of(D)
    return Report(f"Chow divisor {D}", [Check("gr [O_D] = sum n_i [D_i]", str(lhs), str(rhs), lhs == rhs)])


def additive_shadow(D: SNCConfig) -> Report:
    """The additive-law divisor class, read through ``gr``, is ``sum n_i [D_i]``."""
    P = D.ambient
    res = divisor_class(D, fgl_additive(required_truncation(D)))
    k_part = res.total.beta_terms().get(P.d - 1, k_ring(P).zero())
    lhs = gr_map(P, ConnectiveClass(P, P.d - 1, k_part))
    rhs = _cycle_of(D)
    return Report(f"additive shadow {D}", [Check("gr [D]_+ = sum n_i [D_i]", str(lhs), str(rhs), lhs == rhs)])


def load_config(path: str) -> SNCConfig:
    with open(path) as fh:
        return SNCConfig.from_json(json.load(fh))

