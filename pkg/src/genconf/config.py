"""Point configurations in CP^m / C^m, permutations, and projective transforms.

Indices are 1-based everywhere, so ``config.row(1)`` is the first point and a
multiindex ``(1, 2, 3)`` selects the first three rows.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from . import arith
from .arith import ONE, ZERO, GaussianRational
from .errors import (
    ImageNotAffine,
    InvalidConfiguration,
    InvalidMultiindex,
    InvalidPermutation,
    SamplingExhausted,
    SingularMatrix,
)

PROJECTIVE = "projective"
AFFINE = "affine"


def _scalar(x) -> GaussianRational:
    return GaussianRational.coerce(x)


def proportional(u: Sequence[GaussianRational], v: Sequence[GaussianRational]) -> bool:
    """True iff u = c*v for a nonzero scalar c (both vectors assumed nonzero).

    Decided by cross-multiplication so no normalization is needed.
    """
    if len(u) != len(v):
        return False
    p = next((i for i, x in enumerate(v) if not x.is_zero()), None)
    if p is None or u[p].is_zero():
        return False
    up, vp = u[p], v[p]
    return all(u[i] * vp == v[i] * up for i in range(len(u)))


def _normalized(row: Sequence[GaussianRational]):
    p = next(i for i, x in enumerate(row) if not x.is_zero())
    inv = row[p].reciprocal()
    return tuple(x * inv for x in row)


# -- permutations ----------------------------------------------------------


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}; ``images[i-1]`` is the image of ``i``.

    Composition follows function notation: ``(s * t)(i) == s(t(i))``.
    """

    images: tuple

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise InvalidPermutation(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, n: int, *cycles) -> "Permutation":
        images = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def random(cls, n: int, rng: random.Random) -> "Permutation":
        images = list(range(1, n + 1))
        rng.shuffle(images)
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.n != self.n:
            raise InvalidPermutation("composing permutations of different degree")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def support(self) -> tuple:
        return tuple(i for i, j in enumerate(self.images, start=1) if i != j)

    def __repr__(self):
        return f"Permutation({list(self.images)})"


def adjacent_transpositions(n: int) -> list:
    return [Permutation.transposition(n, i, i + 1) for i in range(1, n)]


# -- projective transforms -------------------------------------------------


@dataclass(frozen=True, eq=False)
class ProjectiveTransform:
    """An invertible (m+1)x(m+1) matrix taken up to a nonzero scalar."""

    matrix: tuple

    def __post_init__(self):
        mat = tuple(tuple(_scalar(x) for x in row) for row in self.matrix)
        k = len(mat)
        if k == 0 or any(len(row) != k for row in mat):
            raise InvalidConfiguration("transform matrix must be square and nonempty")
        if arith.det(mat).is_zero():
            raise SingularMatrix("projective transform must have nonzero determinant")
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def identity(cls, k: int) -> "ProjectiveTransform":
        return cls(arith.identity(k))

    @classmethod
    def random(cls, k: int, rng: random.Random, bound: int = 5) -> "ProjectiveTransform":
        while True:
            mat = tuple(
                tuple(GaussianRational(rng.randint(-bound, bound), rng.randint(-bound, bound))
                      for _ in range(k))
                for _ in range(k)
            )
            if not arith.det(mat).is_zero():
                return cls(mat)

    @property
    def size(self) -> int:
        return len(self.matrix)

    def __matmul__(self, other: "ProjectiveTransform") -> "ProjectiveTransform":
        return ProjectiveTransform(arith.matmul(self.matrix, other.matrix))

    def inverse(self) -> "ProjectiveTransform":
        return ProjectiveTransform(arith.inverse(self.matrix))

    def apply(self, vector):
        return arith.matvec(self.matrix, vector)

    def normalized(self) -> tuple:
        flat = tuple(x for row in self.matrix for x in row)
        p = next(i for i, x in enumerate(flat) if not x.is_zero())
        inv = flat[p].reciprocal()
        return tuple(tuple(x * inv for x in row) for row in self.matrix)

    def __eq__(self, other):
        if not isinstance(other, ProjectiveTransform):
            return NotImplemented
        if self.size != other.size:
            return False
        flat_a = [x for row in self.matrix for x in row]
        flat_b = [x for row in other.matrix for x in row]
        return proportional(flat_a, flat_b)

    def __hash__(self):
        return hash(self.normalized())

    def to_json(self) -> list:
        return matrix_to_json(self.matrix)

    @classmethod
    def from_json(cls, obj) -> "ProjectiveTransform":
        return cls(matrix_from_json(obj))


def matrix_to_json(mat) -> list:
    return [[x.to_json() for x in row] for row in mat]


def matrix_from_json(obj) -> tuple:
    return tuple(tuple(GaussianRational.from_json(x) for x in row) for row in obj)


# -- configurations --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Configuration:
    """n points of CP^m (projective) or C^m (affine) as an n x (m+1) matrix.

    Affine rows carry an explicit trailing 1.  Equality of projective
    configurations is row-wise equality up to a nonzero scalar per row.
    """

    m: int
    n: int
    space: str
    rows: tuple
    _minors: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(_scalar(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        m, n = self.m, self.n
        if m < 1:
            raise InvalidConfiguration(f"dimension m must be >= 1, got {m}")
        if n < m + 3:
            raise InvalidConfiguration(f"need n >= m+3 points, got m={m}, n={n}")
        if self.space not in (PROJECTIVE, AFFINE):
            raise InvalidConfiguration(f"unknown space {self.space!r}")
        if len(rows) != n or any(len(r) != m + 1 for r in rows):
            raise InvalidConfiguration(f"expected {n} rows of length {m + 1}")
        for i, r in enumerate(rows, start=1):
            if self.space == AFFINE and r[-1] != ONE:
                raise InvalidConfiguration(f"affine row {i} must end with 1")
            if all(x.is_zero() for x in r):
                raise InvalidConfiguration(f"row {i} is the zero vector")

    @classmethod
    def projective(cls, rows) -> "Configuration":
        rows = tuple(tuple(r) for r in rows)
        return cls(len(rows[0]) - 1, len(rows), PROJECTIVE, rows)

    @classmethod
    def affine(cls, points) -> "Configuration":
        """Build from affine points given as length-m coordinate tuples."""
        rows = tuple(tuple(p) + (1,) for p in points)
        return cls(len(rows[0]) - 1, len(rows), AFFINE, rows)

    def row(self, i: int):
        return self.rows[i - 1]

    def as_projective(self) -> "Configuration":
        if self.space == PROJECTIVE:
            return self
        return Configuration(self.m, self.n, PROJECTIVE, self.rows)

    # -- equality ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        if (self.m, self.n, self.space) != (other.m, other.n, other.space):
            return False
        if self.space == AFFINE:
            return self.rows == other.rows
        return all(proportional(a, b) for a, b in zip(self.rows, other.rows))

    def __hash__(self):
        return hash((self.m, self.n, self.space, tuple(_normalized(r) for r in self.rows)))

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "space": self.space,
            "rows": [[x.to_json() for x in row] for row in self.rows],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Configuration":
        try:
            return cls(int(obj["m"]), int(obj["n"]), obj["space"],
                       tuple(tuple(GaussianRational.from_json(x) for x in row) for row in obj["rows"]))
        except (KeyError, TypeError) as exc:
            raise InvalidConfiguration(f"malformed configuration JSON: {exc}") from None

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "Configuration":
        return cls.from_json(json.loads(text))


def _check_multiindex(config: Configuration, idx: Sequence[int], size: int) -> None:
    if len(idx) != size:
        raise InvalidMultiindex(f"expected {size} indices, got {len(idx)}")
    if len(set(idx)) != len(idx):
        raise InvalidMultiindex(f"duplicate index in {tuple(idx)}")
    if any(not 1 <= i <= config.n for i in idx):
        raise InvalidMultiindex(f"index out of range 1..{config.n} in {tuple(idx)}")


def sort_sign(idx: Sequence[int]):
    """Return (sorted tuple, sign of the sorting permutation)."""
    idx = list(idx)
    sign = 1
    # insertion sort counts inversions
    for a in range(1, len(idx)):
        b = a
        while b > 0 and idx[b - 1] > idx[b]:
            idx[b - 1], idx[b] = idx[b], idx[b - 1]
            sign = -sign
            b -= 1
    return tuple(idx), sign


def minor(config: Configuration, idx: Sequence[int]) -> GaussianRational:
    """The maximal minor d_{idx}: determinant of the rows listed in ``idx``."""
    idx = tuple(idx)
    _check_multiindex(config, idx, config.m + 1)
    key, sign = sort_sign(idx)
    value = config._minors.get(key)
    if value is None:
        value = arith.det(tuple(config.row(i) for i in key))
        config._minors[key] = value
    return value if sign > 0 else -value


def is_generic(config: Configuration) -> bool:
    return all(
        not minor(config, idx).is_zero()
        for idx in combinations(range(1, config.n + 1), config.m + 1)
    )


def sample_generic(m: int, n: int, space: str = PROJECTIVE, seed=0,
                   max_rounds: int = 1000) -> Configuration:
    """A generic configuration with Gaussian-integer entries, by rejection.

    Entries have real and imaginary parts uniform in [-10n, 10n]; affine rows
    get a trailing 1.  Deterministic in ``seed`` (an int or a ``random.Random``).
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    bound = 10 * n
    width = m + 1 if space == PROJECTIVE else m
    for _ in range(max_rounds):
        rows = []
        for _ in range(n):
            row = [GaussianRational(rng.randint(-bound, bound), rng.randint(-bound, bound))
                   for _ in range(width)]
            if space == AFFINE:
                row.append(ONE)
            rows.append(tuple(row))
        try:
            q = Configuration(m, n, space, tuple(rows))
        except InvalidConfiguration:
            continue
        if is_generic(q):
            return q
    raise SamplingExhausted(f"no generic configuration after {max_rounds} rounds")


def act_permutation(sigma: Permutation, config: Configuration) -> Configuration:
    """Row i of the result is row sigma^{-1}(i) of the input."""
    if sigma.n != config.n:
        raise InvalidPermutation(f"permutation of degree {sigma.n} on {config.n} points")
    inv = sigma.inverse()
    rows = tuple(config.row(inv(i)) for i in range(1, config.n + 1))
    return Configuration(config.m, config.n, config.space, rows)


def act_transform(T: ProjectiveTransform, config: Configuration) -> Configuration:
    """Apply T to every point (rows as column vectors).

    Affine images are rescaled to a trailing 1; an image point at infinity
    raises ImageNotAffine.
    """
    if T.size != config.m + 1:
        raise InvalidConfiguration(f"transform of size {T.size} on points of CP^{config.m}")
    rows = [T.apply(r) for r in config.rows]
    if config.space == AFFINE:
        scaled = []
        for i, r in enumerate(rows, start=1):
            if r[-1].is_zero():
                raise ImageNotAffine(f"point {i} is sent to the hyperplane at infinity")
            inv = r[-1].reciprocal()
            scaled.append(tuple(x * inv for x in r[:-1]) + (ONE,))
        rows = scaled
    return Configuration(config.m, config.n, config.space, tuple(rows))


def standard_rows(m: int) -> list:
    """v_1..v_{m+1} followed by w = [1:...:1]."""
    k = m + 1
    rows = [tuple(ONE if i == j else ZERO for j in range(k)) for i in range(k)]
    rows.append(tuple(ONE for _ in range(k)))
    return rows


def reduced_configuration(m: int, tail: Iterable) -> Configuration:
    """Projective configuration v_1..v_{m+1}, w, followed by the given rows."""
    rows = standard_rows(m) + [tuple(_scalar(x) for x in r) for r in tail]
    return Configuration(m, len(rows), PROJECTIVE, tuple(rows))
