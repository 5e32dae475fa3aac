"""Tame self-maps of generic configuration spaces and their recovery.

A tame map is ``f(q) = sigma . tau(q) q`` with ``sigma`` a fixed permutation
and ``tau`` an S(n)-invariant PSL-valued function of the configuration.  The
recovery pipeline treats ``f`` as a black box: it identifies the induced map
``f*`` on cross ratios numerically, solves for a correcting permutation
``rho`` and rebuilds ``tau`` from the normalization map.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Union

from . import arith
from .arith import ZERO, GaussianRational
from .config import (
    PROJECTIVE,
    Configuration,
    Permutation,
    ProjectiveTransform,
    act_permutation,
    act_transform,
    adjacent_transpositions,
    matrix_from_json,
    matrix_to_json,
    proportional,
    sample_generic,
)
from .dcr import Dcr, enumerate_dcrs, evaluate, parse_dcr, permute
from .errors import (
    InducedMapInconsistent,
    InvalidConfiguration,
    SingularMatrix,
    TheoremViolation,
    UnsupportedCase,
)
from .normalize import gamma
from .simplicial import solve_permutations, solve_permutations_bruteforce

Evaluator = Callable[[Configuration], Configuration]


@lru_cache(maxsize=64)
def dcr_orbit(d: Dcr, n: int) -> tuple:
    """The S(n)-orbit of a cross ratio, sorted."""
    gens = adjacent_transpositions(n)
    seen = {d}
    queue = deque([d])
    while queue:
        cur = queue.popleft()
        for g in gens:
            img = permute(g, cur)
            if img not in seen:
                seen.add(img)
                queue.append(img)
    return tuple(sorted(seen))


# -- transform families ------------------------------------------------------


@dataclass(frozen=True)
class ConstantTau:
    transform: ProjectiveTransform

    def __call__(self, q: Configuration) -> ProjectiveTransform:
        return self.transform

    def to_json(self) -> dict:
        return {"kind": "constant", "matrix": self.transform.to_json()}


@dataclass(frozen=True)
class ParametricTau:
    """T(u) = sum_p u^p A_p with u = sum of e(q)^power over the S(n)-orbit of one DCR.

    The parameter is a symmetric function of the configuration, so the family
    is S(n)-invariant exactly.  ``power`` must be at least 2: the orbit is
    closed under d -> 1 - d, which makes the plain sum constant.
    """

    orbit_dcr: Dcr
    coefficients: tuple
    power: int = 2

    def __post_init__(self):
        coeffs = tuple(tuple(tuple(GaussianRational.coerce(x) for x in row) for row in A)
                       for A in self.coefficients)
        if not coeffs:
            raise InvalidConfiguration("parametric family needs at least one coefficient matrix")
        if self.power < 2:
            raise InvalidConfiguration("power must be >= 2")
        object.__setattr__(self, "coefficients", coeffs)

    def parameter(self, q: Configuration) -> GaussianRational:
        total = ZERO
        for d in dcr_orbit(self.orbit_dcr, q.n):
            total = total + evaluate(d, q) ** self.power
        return total

    def __call__(self, q: Configuration) -> ProjectiveTransform:
        u = self.parameter(q)
        size = len(self.coefficients[0])
        mat = [[ZERO] * size for _ in range(size)]
        scale = arith.ONE
        for A in self.coefficients:
            for i in range(size):
                for j in range(size):
                    if not A[i][j].is_zero():
                        mat[i][j] = mat[i][j] + scale * A[i][j]
            scale = scale * u
        return ProjectiveTransform(tuple(tuple(r) for r in mat))

    def to_json(self) -> dict:
        return {
            "kind": "parametric",
            "orbit_dcr": str(self.orbit_dcr),
            "template": {"coefficients": [matrix_to_json(A) for A in self.coefficients],
                         "power": self.power},
        }


Tau = Union[ConstantTau, ParametricTau]


@dataclass(frozen=True)
class TameMap:
    sigma: Permutation
    tau: Tau

    @property
    def n(self) -> int:
        return self.sigma.n

    @property
    def m(self) -> int:
        if isinstance(self.tau, ConstantTau):
            return self.tau.transform.size - 1
        return len(self.tau.coefficients[0]) - 1

    def __call__(self, q: Configuration) -> Configuration:
        return eval_map(self, q)

    def to_json(self) -> dict:
        return {"sigma": list(self.sigma.images), "tau": self.tau.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "TameMap":
        try:
            sigma = Permutation(tuple(obj["sigma"]))
            tau_obj = obj["tau"]
            if tau_obj["kind"] == "constant":
                tau: Tau = ConstantTau(ProjectiveTransform.from_json(tau_obj["matrix"]))
            elif tau_obj["kind"] == "parametric":
                template = tau_obj["template"]
                tau = ParametricTau(parse_dcr(tau_obj["orbit_dcr"]),
                                    tuple(matrix_from_json(A) for A in template["coefficients"]),
                                    int(template.get("power", 2)))
            else:
                raise InvalidConfiguration(f"unknown tau kind {tau_obj['kind']!r}")
        except (KeyError, TypeError) as exc:
            raise InvalidConfiguration(f"malformed tame map JSON: {exc}") from None
        return cls(sigma, tau)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def eval_map(f: TameMap, q: Configuration) -> Configuration:
    """sigma . tau(q) q; affine inputs must stay affine (quasitame)."""
    if q.n != f.n or q.m != f.m:
        raise InvalidConfiguration(f"map on (m={f.m}, n={f.n}) applied to (m={q.m}, n={q.n})")
    return act_permutation(f.sigma, act_transform(f.tau(q), q))


def random_tame_map(m: int, n: int, seed=0, kind: str = "constant") -> TameMap:
    """A random tame map; parametric families are A0 (I + u N) with N nilpotent,
    so every member is invertible."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    sigma = Permutation.random(n, rng)
    k = m + 1
    A0 = ProjectiveTransform.random(k, rng)
    if kind == "constant":
        return TameMap(sigma, ConstantTau(A0))
    if kind != "parametric":
        raise ValueError(f"unknown kind {kind!r}")
    N = tuple(tuple(GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3)) if j > i else ZERO
                    for j in range(k)) for i in range(k))
    A1 = arith.matmul(A0.matrix, N)
    base = Dcr(tuple(range(1, m)), (m, m + 1, m + 2, m + 3))
    return TameMap(sigma, ParametricTau(base, (A0.matrix, A1)))


def _evaluator(f) -> Evaluator:
    return f if callable(f) else (lambda q: eval_map(f, q))


# -- induced map on cross ratios ----------------------------------------------


def induced_map(f: TameMap, d: Dcr, samples: int = 3, seed=0) -> Dcr:
    """f*(d) = d o f; for tame f this is sigma^{-1} acting on d.

    The symbolic answer is checked against d(f(q)) at sampled configurations.
    """
    image = permute(f.sigma.inverse(), d)
    rng = random.Random(seed)
    for _ in range(samples):
        q = sample_generic(f.m, f.n, PROJECTIVE, rng)
        if evaluate(image, q) != evaluate(d, eval_map(f, q)):
            raise InducedMapInconsistent(f"f*({d}) is not {image} at a sample point")
    return image


def induced_table(f: TameMap, samples: int = 3, seed=0) -> dict:
    """:func:`induced_map` on every vertex, checked at one shared set of samples."""
    rng = random.Random(seed)
    configs = [sample_generic(f.m, f.n, PROJECTIVE, rng) for _ in range(samples)]
    images = [eval_map(f, q) for q in configs]
    inv = f.sigma.inverse()
    table = {}
    for d in enumerate_dcrs(f.m, f.n):
        image = permute(inv, d)
        if any(evaluate(image, q) != evaluate(d, fq) for q, fq in zip(configs, images)):
            raise InducedMapInconsistent(f"f*({d}) is not {image} at a sample point")
        table[d] = image
    return table


def identify_induced_map(f, m: int, n: int, seed=0, samples: int = 3,
                         max_samples: int = 6) -> dict:
    """Black-box f* on every DCR, identified by values at sample configurations.

    Distinct DCRs are distinct rational functions, so a handful of random
    samples separates them; more samples are drawn while any two DCRs share
    their value vector, up to ``max_samples``.
    """
    f_eval = _evaluator(f)
    rng = random.Random(seed)
    vertices = enumerate_dcrs(m, n)
    configs = [sample_generic(m, n, PROJECTIVE, rng) for _ in range(samples)]
    while True:
        keys = {}
        for d in vertices:
            keys.setdefault(tuple(evaluate(d, q) for q in configs), []).append(d)
        if len(keys) == len(vertices):
            break
        if len(configs) >= max_samples:
            raise InducedMapInconsistent("cross ratios not separated by the sample configurations")
        configs.append(sample_generic(m, n, PROJECTIVE, rng))
    lookup = {k: ds[0] for k, ds in keys.items()}
    images = [f_eval(q) for q in configs]
    table = {}
    for d in vertices:
        key = tuple(evaluate(d, fq) for fq in images)
        if key not in lookup:
            raise InducedMapInconsistent(f"d o f is not a cross ratio for d = {d}")
        table[d] = lookup[key]
    if len(set(table.values())) != len(table):
        raise InducedMapInconsistent("induced map is not injective on vertices")
    return table


def fixed_vertices(m: int, n: int) -> list:
    """e_{(1..m without r); r, m+1, m+2, s} for r = 1..m, s = m+3..n."""
    return [Dcr(tuple(i for i in range(1, m + 1) if i != r), (r, m + 1, m + 2, s))
            for r in range(1, m + 1) for s in range(m + 3, n + 1)]


def _check_case(m: int, n: int) -> None:
    if m <= 1 or n < m + 3:
        raise UnsupportedCase(f"recovery needs m > 1 and n >= m+3, got m={m}, n={n}")
    if n == 2 * m + 2:
        raise UnsupportedCase(f"n = 2m+2 = {n} is excluded")


def find_rho(f, m: Optional[int] = None, n: Optional[int] = None, seed=0,
             table: Optional[dict] = None) -> Permutation:
    """A permutation rho with (rho f)* fixing every vertex of :func:`fixed_vertices`.

    (rho f)*(v) = f*(rho^{-1} v), so rho^{-1} must carry v to the f*-preimage
    of v.  Those index constraints are solved directly; for n <= 8 an
    exhaustive search over S(n) backs up the solver.
    """
    if isinstance(f, TameMap):
        m, n = f.m, f.n
    _check_case(m, n)
    if table is None:
        table = identify_induced_map(f, m, n, seed=seed)
    preimage = {w: d for d, w in table.items()}
    pairs = [(v, preimage[v]) for v in fixed_vertices(m, n)]
    sols = solve_permutations(pairs, n, limit=1)
    if not sols and n <= 8:
        sols = solve_permutations_bruteforce(pairs, n)[:1]
    if not sols:
        raise TheoremViolation("no permutation fixes the distinguished vertices")
    rho = sols[0].inverse()
    _verify_rho(_evaluator(f), rho, m, n, seed)
    return rho


def _verify_rho(f_eval: Evaluator, rho: Permutation, m: int, n: int, seed) -> None:
    rng = random.Random(f"verify-{seed}")
    for _ in range(3):
        q = sample_generic(m, n, PROJECTIVE, rng)
        rfq = act_permutation(rho, f_eval(q))
        for v in fixed_vertices(m, n):
            if evaluate(v, rfq) != evaluate(v, q):
                raise TheoremViolation(f"(rho f)* moves {v}")


@dataclass(frozen=True)
class Recovery:
    sigma: Permutation
    rho: Permutation
    f_eval: Evaluator = field(repr=False, compare=False)

    def tau_eval(self, q: Configuration) -> ProjectiveTransform:
        """gamma(rho f(q))^{-1} gamma(q)."""
        rfq = act_permutation(self.rho, self.f_eval(q)).as_projective()
        return gamma(rfq).inverse() @ gamma(q.as_projective())

    def __call__(self, q: Configuration) -> Configuration:
        return act_permutation(self.sigma, act_transform(self.tau_eval(q), q))


def recover(f, m: Optional[int] = None, n: Optional[int] = None, seed=0) -> Recovery:
    """Write a strictly equivariant black-box map as sigma . tau(q) q."""
    if isinstance(f, TameMap):
        m, n = f.m, f.n
    f_eval = _evaluator(f)
    rho = find_rho(f_eval, m, n, seed=seed)
    return Recovery(rho.inverse(), rho, f_eval)


# -- strict equivariance and the uniqueness guard --------------------------------


def matching_permutation(a: Configuration, b: Configuration) -> Optional[Permutation]:
    """The permutation pi with a = pi . b (rows up to scale), if any."""
    images = [0] * a.n
    for i in range(1, a.n + 1):
        hits = [j for j in range(1, b.n + 1) if proportional(a.row(i), b.row(j))]
        if len(hits) != 1:
            return None
        images[hits[0] - 1] = i
    try:
        return Permutation(tuple(images))
    except ValueError:
        return None


@dataclass
class EquivarianceReport:
    ok: bool
    alpha: dict
    witness: Optional[dict] = None

    def __bool__(self):
        return self.ok


def check_strict_equivariance(f, samples) -> EquivarianceReport:
    """Test f(theta q) = alpha(theta) f(q) on generators and sample configurations.

    alpha is read off from the data on adjacent transpositions; it must agree
    across samples and respect composition on a few products of generators.
    """
    f_eval = _evaluator(f)
    samples = list(samples)
    if not samples:
        raise ValueError("need at least one sample configuration")
    n = samples[0].n
    gens = adjacent_transpositions(n)
    alpha: dict = {}
    images = {id(q): f_eval(q) for q in samples}
    for q in samples:
        fq = images[id(q)]
        for g in gens:
            pi = matching_permutation(f_eval(act_permutation(g, q)), fq)
            if pi is None or alpha.setdefault(g.images, pi) != pi:
                return EquivarianceReport(False, alpha, {"generator": list(g.images), "config": q.to_json(),
                                                          "reason": "no consistent permutation"})
    rng = random.Random(0)
    for q in samples:
        fq = images[id(q)]
        for _ in range(3):
            word = [rng.choice(gens) for _ in range(4)]
            theta = Permutation.identity(n)
            predicted = Permutation.identity(n)
            for g in word:
                theta = theta * g
                predicted = predicted * alpha[g.images]
            if f_eval(act_permutation(theta, q)) != act_permutation(predicted, fq):
                return EquivarianceReport(False, alpha, {"word": [list(g.images) for g in word],
                                                          "config": q.to_json(),
                                                          "reason": "alpha is not multiplicative"})
    return EquivarianceReport(True, alpha)


def projective_symmetries(q: Configuration, perms) -> list:
    """Permutations theta != id for which some A in PSL has A q = theta q."""
    q = q.as_projective()
    g = gamma(q)
    out = []
    for theta in perms:
        if theta.is_identity():
            continue
        tq = act_permutation(theta, q)
        A = gamma(tq).inverse() @ g
        if act_transform(A, q) == tq:
            out.append(theta)
    return out
