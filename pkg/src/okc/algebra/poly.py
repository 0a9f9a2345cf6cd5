"""Sparse polynomials with integer coefficients over presented commutative rings.

A :class:`Ring` fixes an ordered tuple of variables together with the data
needed to keep every element in a canonical normal form:

* per-variable nilpotency bounds (``x**k == 0`` once ``k >= bound``),
* Laurent variables, which may carry negative exponents,
* weighted truncations (drop every monomial whose weighted degree exceeds a
  bound, i.e. quotient by a monomial ideal),
* an optional degreewise linear ``reducer`` applied last.

Monomials are exponent tuples aligned with ``Ring.variables``; a variable
that does not occur simply has exponent 0 in its slot.

Monomial order is graded lexicographic: total degree first, then the
exponent vectors compared lexicographically in variable order.  Terms are
listed from the lowest degree up and, within one degree, from the
lexicographically largest exponent vector down, so ``u`` precedes ``v``
when ``u`` is declared first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Mapping, Sequence, Union

Exps = tuple[int, ...]
Terms = dict[Exps, int]
Reducer = Callable[[Terms], Terms]

__all__ = [
    "Exps",
    "Ring",
    "Poly",
    "RingMismatchError",
    "NotAUnitError",
    "monomial_key",
    "poly_add",
    "poly_mul",
    "poly_invert_unit",
]


class RingMismatchError(ValueError):
    """Operands live in different rings."""


class NotAUnitError(ValueError):
    """Inversion was requested for an element that is not a unit."""


def monomial_key(e: Exps) -> tuple:
    return (sum(e), tuple(-x for x in e))


@dataclass(frozen=True)
class Ring:
    """Descriptor of a quotient of ``Z[x_1, ..., x_m]`` (possibly Laurent in some ``x_i``).

    ``weights`` is the grading used for homogeneity checks.  ``truncations``
    is a tuple of ``(weight_vector, bound)`` pairs with nonnegative weights;
    a monomial ``e`` is zero whenever ``dot(weight_vector, e) > bound``.
    """

    variables: tuple[str, ...]
    weights: tuple[int, ...] | None = None
    nilpotency: tuple[int | None, ...] | None = None
    laurent: tuple[bool, ...] | None = None
    truncations: tuple[tuple[tuple[int, ...], int], ...] = ()
    reducer: Reducer | None = None
    name: str = ""

    _index: dict = field(init=False, repr=False, compare=False, hash=False)
    _nil: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n = len(self.variables)
        setattr_ = object.__setattr__
        setattr_(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != n:
            raise ValueError(f"duplicate variable names in {self.variables}")
        for attr, default in (("weights", 0), ("nilpotency", None), ("laurent", False)):
            value = getattr(self, attr)
            value = (default,) * n if value is None else tuple(value)
            if len(value) != n:
                raise ValueError(f"{attr} has length {len(value)}, expected {n}")
            setattr_(self, attr, value)
        truncs = []
        for w, bound in self.truncations:
            w = tuple(w)
            if len(w) != n or any(x < 0 for x in w):
                raise ValueError("truncation weights must be nonnegative and match the variables")
            truncs.append((w, bound))
        setattr_(self, "truncations", tuple(truncs))
        for i, b in enumerate(self.nilpotency):
            if b is not None and (b < 1 or self.laurent[i]):
                raise ValueError(f"bad nilpotency bound for {self.variables[i]}")
        setattr_(self, "_index", {v: i for i, v in enumerate(self.variables)})
        setattr_(self, "_nil", tuple((i, b) for i, b in enumerate(self.nilpotency) if b is not None))

    # -- structure ---------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not a variable of {self}") from None

    def is_nilpotent_var(self, i: int) -> bool:
        if self.nilpotency[i] is not None:
            return True
        return any(w[i] > 0 for w, _ in self.truncations)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c: int) -> "Poly":
        return Poly(self, {(0,) * self.nvars: int(c)})

    def gen(self, name: str) -> "Poly":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> tuple["Poly", ...]:
        return tuple(self.gen(v) for v in self.variables)

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "Poly":
        return Poly(self, {tuple(exps): coeff})

    def __call__(self, value: Union["Poly", int, Mapping[Exps, int]]) -> "Poly":
        if isinstance(value, Poly):
            return value.lift(self)
        if isinstance(value, int):
            return self.const(value)
        return Poly(self, dict(value))

    def extend(
        self,
        names: Sequence[str],
        weights: Sequence[int] | None = None,
        nilpotency: Sequence[int | None] | None = None,
        trunc: int | None = None,
        name: str = "",
    ) -> "Ring":
        """Append variables; ``trunc`` bounds their total degree.

        The coefficient reducer, if any, is lifted so it acts on the
        coefficient of every monomial in the new variables.
        """
        k = len(names)
        m = self.nvars
        old_truncs = tuple((w + (0,) * k, b) for w, b in self.truncations)
        new_truncs = ()
        if trunc is not None:
            new_truncs = (((0,) * m + (1,) * k, trunc),)
        reducer = None
        if self.reducer is not None:
            reducer = _LiftedReducer(self.reducer, m)
        return Ring(
            self.variables + tuple(names),
            weights=self.weights + tuple(weights if weights is not None else (0,) * k),
            nilpotency=self.nilpotency + tuple(nilpotency if nilpotency is not None else (None,) * k),
            laurent=self.laurent + (False,) * k,
            truncations=old_truncs + new_truncs,
            reducer=reducer,
            name=name,
        )

    def truncate_weight(self, bound: int) -> "Ring":
        """Quotient by all monomials of weight below ``-bound`` (needs nonpositive weights)."""
        if any(w > 0 for w in self.weights) or any(self.laurent):
            raise ValueError("weight truncation needs nonpositive weights and no Laurent variables")
        if not self.variables:
            return self
        w = tuple(-x for x in self.weights)
        return Ring(
            self.variables,
            self.weights,
            self.nilpotency,
            self.laurent,
            self.truncations + ((w, bound),),
            self.reducer,
            self.name,
        )

    # -- normal forms ------------------------------------------------------

    def admissible(self, e: Exps) -> bool:
        for i, b in self._nil:
            if e[i] >= b:
                return False
        for w, bound in self.truncations:
            if sum(a * x for a, x in zip(w, e)) > bound:
                return False
        return True

    def normalize(self, terms: Mapping[Exps, int]) -> Terms:
        n = self.nvars
        out: Terms = {}
        for e, c in terms.items():
            if not c:
                continue
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match {n} variables")
            for i, x in enumerate(e):
                if x < 0 and not self.laurent[i]:
                    raise ValueError(f"negative exponent on non-Laurent variable {self.variables[i]}")
            if not self.admissible(e):
                continue
            out[e] = out.get(e, 0) + int(c)
        out = {e: c for e, c in out.items() if c}
        if self.reducer is not None and out:
            out = {e: c for e, c in self.reducer(out).items() if c}
        return out

    def __str__(self) -> str:
        if self.name:
            return self.name
        return f"Z[{', '.join(self.variables)}]" if self.variables else "Z"


@dataclass(frozen=True)
class _LiftedReducer:
    inner: Reducer
    split: int

    def __call__(self, terms: Terms) -> Terms:
        groups: dict[Exps, Terms] = {}
        k = self.split
        for e, c in terms.items():
            groups.setdefault(e[k:], {})[e[:k]] = c
        out: Terms = {}
        for tail, coeff in groups.items():
            for head, c in self.inner(coeff).items():
                if c:
                    out[head + tail] = c
        return out


class Poly:
    """Immutable element of a :class:`Ring`, always kept in normal form."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Exps, int] | None = None):
        self.ring = ring
        self._terms = ring.normalize(terms or {})
        self._hash = None

    @classmethod
    def _from_normal(cls, ring: Ring, terms: Terms) -> "Poly":
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    # -- access ------------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exps, int]:
        return MappingProxyType(self._terms)

    def items(self) -> list[tuple[Exps, int]]:
        """Terms in graded-lex display order."""
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0]))

    def coefficient(self, exps: Sequence[int] | Mapping[str, int]) -> int:
        if isinstance(exps, Mapping):
            e = [0] * self.ring.nvars
            for name, k in exps.items():
                e[self.ring.index(name)] = k
            exps = e
        return self._terms.get(tuple(exps), 0)

    def constant_term(self) -> int:
        return self._terms.get((0,) * self.ring.nvars, 0)

    def degree(self) -> int:
        """Total degree (sum of exponents); -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def weights(self) -> set[int]:
        w = self.ring.weights
        return {sum(a * b for a, b in zip(w, e)) for e in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        terms = {e: -c for e, c in self._terms.items()}
        if self.ring.reducer is None:
            return Poly._from_normal(self.ring, terms)
        return Poly(self.ring, terms)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_add(other, -self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return self.ring.zero()
            return Poly(self.ring, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            return poly_invert_unit(self) ** (-k)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- ring changes ------------------------------------------------------

    def lift(self, target: Ring) -> "Poly":
        """Re-express in ``target`` by matching variable names."""
        if target == self.ring:
            return self
        pos = [target.index(v) for v in self.ring.variables]
        terms: Terms = {}
        for e, c in self._terms.items():
            f = [0] * target.nvars
            for i, x in enumerate(e):
                if x:
                    f[pos[i]] = x
            terms[tuple(f)] = c
        return Poly(target, terms)

    def substitute(self, target: Ring, images: Mapping[str, Union["Poly", int]] | None = None) -> "Poly":
        """Ring homomorphism sending each variable to its image in ``target``.

        Variables without an explicit image go to the variable of the same
        name in ``target``.  Negative exponents require a unit image.
        """
        images = dict(images or {})
        imgs = []
        for v in self.ring.variables:
            img = images.get(v)
            if img is None:
                img = target.gen(v)
            elif isinstance(img, int):
                img = target.const(img)
            elif img.ring != target:
                raise RingMismatchError(f"image of {v} lives in {img.ring}, not {target}")
            imgs.append(img)
        cache: list[dict[int, Poly]] = [{} for _ in imgs]

        def power(i: int, k: int) -> Poly:
            got = cache[i].get(k)
            if got is None:
                if k == 0:
                    got = target.one()
                elif k > 0:
                    got = power(i, k - 1) * imgs[i]
                else:
                    got = power(i, k + 1) * poly_invert_unit(imgs[i])
                cache[i][k] = got
            return got

        acc: Terms = {}
        for e, c in self._terms.items():
            term = target.const(c)
            for i, x in enumerate(e):
                if x:
                    term = term * power(i, x)
                    if not term:
                        break
            for f, d in term._terms.items():
                acc[f] = acc.get(f, 0) + d
        return Poly(target, acc)

    # -- display -----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        names = self.ring.variables
        for e, c in self.items():
            mono = "*".join(
                names[i] if x == 1 else f"{names[i]}^{x}" for i, x in enumerate(e) if x
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self}, ring={self.ring})"


def poly_add(p: Poly, q: Poly) -> Poly:
    if p.ring != q.ring:
        raise RingMismatchError(f"{p.ring} vs {q.ring}")
    terms = dict(p._terms)
    for e, c in q._terms.items():
        s = terms.get(e, 0) + c
        if s:
            terms[e] = s
        else:
            terms.pop(e, None)
    if p.ring.reducer is None:
        return Poly._from_normal(p.ring, terms)
    return Poly(p.ring, terms)


def poly_mul(p: Poly, q: Poly) -> Poly:
    if p.ring != q.ring:
        raise RingMismatchError(f"{p.ring} vs {q.ring}")
    ring = p.ring
    admissible = ring.admissible
    out: Terms = {}
    for ea, ca in p._terms.items():
        for eb, cb in q._terms.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            if not admissible(e):
                continue
            out[e] = out.get(e, 0) + ca * cb
    out = {e: c for e, c in out.items() if c}
    if ring.reducer is not None and out:
        out = {e: c for e, c in ring.reducer(out).items() if c}
    return Poly._from_normal(ring, out)


def poly_invert_unit(p: Poly) -> Poly:
    """Inverse of a unit of the form ``c*m`` (``m`` a Laurent monomial) or ``+-1 + nilpotent``."""
    ring = p.ring
    if len(p._terms) == 1:
        ((e, c),) = p._terms.items()
        if abs(c) == 1 and all(ring.laurent[i] for i, x in enumerate(e) if x):
            return Poly(ring, {tuple(-x for x in e): c})
    c = p.constant_term()
    if c not in (1, -1):
        raise NotAUnitError(f"constant term of {p} is {c}, not +-1")
    zero = (0,) * ring.nvars
    for e in p._terms:
        if e != zero and not any(x > 0 and ring.is_nilpotent_var(i) for i, x in enumerate(e)):
            raise NotAUnitError(f"term {e} of {p} involves no nilpotent variable")
    # p = c(1 + n'), p^-1 = c * sum (-n')^k with n' = c*p - 1
    step = -(p * c - 1)
    result = ring.one()
    power = ring.one()
    for _ in range(_nilpotency_budget(ring, step)):
        power = power * step
        if not power:
            break
        result = result + power
    else:
        raise NotAUnitError(f"{p} did not invert within the nilpotency budget")
    return result * c


def _nilpotency_budget(ring: Ring, n: Poly) -> int:
    # Each factor of n raises some nilpotent exponent; bound the number of steps.
    total = sum(b for b in ring.nilpotency if b is not None)
    total += sum(bound for _, bound in ring.truncations)
    return total + 2

