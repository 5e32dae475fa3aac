"""Determinant cross ratios (DCRs) as symbolic objects.

For an (m-1)-element index set i and four further indices j, k, l, s::

    e_{i;j,k,l,s}(q) = d_{i,j,k} d_{i,l,s} / (d_{i,j,l} d_{i,k,s})

where d_{...} are maximal minors.  Two index data give the same function iff
the essential supports agree and the quadruples differ by a Klein
double transposition, so a :class:`Dcr` stores the sorted essential support
and the lexicographically least quadruple of its Klein orbit.

Quotients of DCRs are handled formally: a :class:`SignedMonomial` records a
sign and integer exponents of sorted minors.  Distinct maximal minors are
distinct irreducible polynomials, so two such monomials define the same
rational function iff they are equal as data.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, perm
from typing import Iterable, Optional

from .arith import ONE, GaussianRational
from .config import Configuration, Permutation, minor, sort_sign
from .errors import InvalidDcr, NotGeneric

KLEIN = ((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))


def klein_orbit(quad) -> list:
    return [tuple(quad[p] for p in pattern) for pattern in KLEIN]


@dataclass(frozen=True, order=True)
class Dcr:
    essential_support: tuple
    quad: tuple

    def __post_init__(self):
        ess = tuple(sorted(int(i) for i in self.essential_support))
        quad = tuple(int(i) for i in self.quad)
        if len(quad) != 4:
            raise InvalidDcr(f"a cross ratio needs four quadruple indices, got {quad}")
        every = ess + quad
        if len(set(every)) != len(every):
            raise InvalidDcr(f"indices must be distinct: {ess};{quad}")
        if any(i < 1 for i in every):
            raise InvalidDcr("indices are 1-based")
        object.__setattr__(self, "essential_support", ess)
        object.__setattr__(self, "quad", min(klein_orbit(quad)))

    @property
    def m(self) -> int:
        return len(self.essential_support) + 1

    @property
    def support(self) -> frozenset:
        return frozenset(self.essential_support + self.quad)

    def __str__(self):
        ess = ",".join(map(str, self.essential_support))
        return f"e[{{{ess}}};{','.join(map(str, self.quad))}]"

    def __repr__(self):
        return f"Dcr({self})"


def make_dcr(i: Iterable[int], j: int, k: int, l: int, s: int) -> Dcr:
    return Dcr(tuple(i), (j, k, l, s))


_DCR_TEXT = re.compile(r"^\s*e\[\s*\{([\d,\s]*)\}\s*;\s*([\d,\s]+)\]\s*$")


def parse_dcr(text: str) -> Dcr:
    """Parse ``"e[{1,2};3,4,5,6]"``."""
    match = _DCR_TEXT.match(text)
    if not match:
        raise InvalidDcr(f"cannot parse cross ratio {text!r}")
    ess_txt, quad_txt = match.groups()
    ess = tuple(int(x) for x in ess_txt.split(",") if x.strip())
    quad = tuple(int(x) for x in quad_txt.split(",") if x.strip())
    return Dcr(ess, quad)


def _determinant_indices(d: Dcr):
    i = d.essential_support
    j, k, l, s = d.quad
    return (i + (j, k), i + (l, s)), (i + (j, l), i + (k, s))


def evaluate(d: Dcr, config: Configuration) -> GaussianRational:
    """Value of ``d`` at ``config``; raises NotGeneric on a vanishing minor of its support."""
    if d.m != config.m:
        raise InvalidDcr(f"cross ratio for m={d.m} evaluated on a configuration with m={config.m}")
    if max(d.support) > config.n:
        raise InvalidDcr(f"{d} refers to points beyond n={config.n}")
    i = d.essential_support
    j, k, l, s = d.quad
    pairs = {(a, b): minor(config, i + (a, b)) for a, b in combinations((j, k, l, s), 2)}
    if any(v.is_zero() for v in pairs.values()):
        raise NotGeneric(f"a minor in the support of {d} vanishes")

    def dd(a, b):
        return pairs[(a, b)] if (a, b) in pairs else -pairs[(b, a)]

    return (dd(j, k) * dd(l, s)) / (dd(j, l) * dd(k, s))


def inverse(d: Dcr) -> Dcr:
    """The DCR equal to 1/d: swap the 2nd and 3rd quadruple entries."""
    j, k, l, s = d.quad
    return Dcr(d.essential_support, (j, l, k, s))


def one_minus(d: Dcr) -> Dcr:
    """The DCR equal to 1 - d: swap the 2nd and 4th quadruple entries."""
    j, k, l, s = d.quad
    return Dcr(d.essential_support, (j, s, l, k))


def permute(sigma: Permutation, d: Dcr) -> Dcr:
    """sigma acting on index data: e_{i;j,k,l,s} -> e_{sigma(i);sigma(j),...}."""
    return Dcr(tuple(sigma(i) for i in d.essential_support), tuple(sigma(i) for i in d.quad))


# -- formal monomials --------------------------------------------------------


@dataclass(frozen=True)
class SignedMonomial:
    """sign * prod d_K^e over sorted index tuples K."""

    sign: int
    factors: tuple = ()

    @classmethod
    def build(cls, sign: int, exponents: dict) -> "SignedMonomial":
        return cls(sign, tuple(sorted((k, e) for k, e in exponents.items() if e)))

    def exponents(self) -> dict:
        return dict(self.factors)

    def __mul__(self, other: "SignedMonomial") -> "SignedMonomial":
        exps = self.exponents()
        for k, e in other.factors:
            exps[k] = exps.get(k, 0) + e
        return SignedMonomial.build(self.sign * other.sign, exps)

    def inverse(self) -> "SignedMonomial":
        return SignedMonomial(self.sign, tuple((k, -e) for k, e in self.factors))

    def __truediv__(self, other: "SignedMonomial") -> "SignedMonomial":
        return self * other.inverse()

    def is_constant(self) -> bool:
        return not self.factors


@lru_cache(maxsize=1 << 16)
def monomial(d: Dcr) -> SignedMonomial:
    num, den = _determinant_indices(d)
    sign = 1
    exps: dict = {}
    for idx, e in [(num[0], 1), (num[1], 1), (den[0], -1), (den[1], -1)]:
        key, sg = sort_sign(idx)
        sign *= sg
        exps[key] = exps.get(key, 0) + e
    return SignedMonomial.build(sign, exps)


def formal_quotient(mu: Dcr, nu: Dcr) -> SignedMonomial:
    return monomial(mu) / monomial(nu)


def as_dcr(mon: SignedMonomial) -> Optional[Dcr]:
    """The DCR whose formal fraction is ``mon``, or None."""
    if len(mon.factors) != 4:
        return None
    num = [set(k) for k, e in mon.factors if e == 1]
    den = [set(k) for k, e in mon.factors if e == -1]
    if len(num) != 2 or len(den) != 2:
        return None
    common = num[0] & num[1] & den[0] & den[1]
    size = len(mon.factors[0][0])
    if len(common) != size - 2:
        return None
    num_pairs = [frozenset(x - common) for x in num]
    den_pairs = [frozenset(x - common) for x in den]
    if any(len(p) != 2 for p in num_pairs + den_pairs):
        return None
    letters = num_pairs[0] | num_pairs[1]
    if len(letters) != 4 or den_pairs[0] | den_pairs[1] != letters:
        return None
    j = min(letters)
    (k,) = next(p for p in num_pairs if j in p) - {j}
    (l,) = next(p for p in den_pairs if j in p) - {j}
    rest = letters - {j, k, l}
    if len(rest) != 1:
        return None
    (s,) = rest
    candidate = Dcr(tuple(common), (j, k, l, s))
    return candidate if monomial(candidate) == mon else None


def divides(nu: Dcr, mu: Dcr) -> bool:
    """nu | mu: the quotient mu / nu is again a determinant cross ratio."""
    if nu.m != mu.m:
        return False
    return as_dcr(formal_quotient(mu, nu)) is not None


def divisor_candidates(mu: Dcr, n: int) -> set:
    """Proper divisors of ``mu`` predicted by the support analysis.

    Different support: replace one quadruple letter by an outside index t,
    in the four patterns e_{i;j,k,r,t}, e_{i;k,j,s,t}, e_{i;r,s,j,t},
    e_{i;s,r,k,t}.  Same support: trade one essential index with one
    quadruple letter in place.
    """
    i = mu.essential_support
    j, k, r, s = mu.quad
    out = set()
    for t in range(1, n + 1):
        if t in mu.support:
            continue
        out.add(Dcr(i, (j, k, r, t)))
        out.add(Dcr(i, (k, j, s, t)))
        out.add(Dcr(i, (r, s, j, t)))
        out.add(Dcr(i, (s, r, k, t)))
    for x in i:
        rest = tuple(y for y in i if y != x)
        for p in range(4):
            quad = list(mu.quad)
            moved = quad[p]
            quad[p] = x
            out.add(Dcr(rest + (moved,), tuple(quad)))
    return out


def enumerate_dcrs(m: int, n: int) -> list:
    """All DCRs on n points of CP^m, in canonical (sorted) order."""
    if n < m + 3:
        raise InvalidDcr(f"need n >= m+3, got m={m}, n={n}")
    out = []
    everything = range(1, n + 1)
    for ess in combinations(everything, m - 1):
        rest = [x for x in everything if x not in ess]
        for four in combinations(rest, 4):
            j = four[0]
            for k, l, s in permutations(four[1:]):
                out.append(Dcr(ess, (j, k, l, s)))
    out.sort()
    return out


def dcr_count(m: int, n: int) -> int:
    return comb(n, m - 1) * perm(n - m + 1, 4) // 4


def plucker_defect(config: Configuration, i, j: int, k: int, l: int, s: int) -> GaussianRational:
    """d_{i,j,k} d_{i,l,s} + d_{i,j,l} d_{i,s,k} + d_{i,j,s} d_{i,k,l}; identically zero."""
    i = tuple(i)

    def d(*rest):
        return minor(config, i + rest)

    return d(j, k) * d(l, s) + d(j, l) * d(s, k) + d(j, s) * d(k, l)


def value_is_exceptional(value: GaussianRational) -> bool:
    return value.is_zero() or value == ONE
