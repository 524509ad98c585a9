"""Normed free Z-modules with exact rational norm data.

The central object is a pair (Z^r, ||.||) where the norm is described exactly:

* ``Ellipsoid(gram)``     -- ||x|| = sqrt(x^T G x), G symmetric positive definite
                             with rational entries;
* ``PolyMax(functionals)``-- ||x|| = max_j |<a_j, x>| over m >= r rational rows;
* ``Scaled(inner, alpha)``-- ||x|| = e^{-alpha} * inner(x) with rational alpha.

The lattice is always Z^r with covolume 1; general lattices are normalized by
pulling the norm back through a basis change before construction.  Scale
twists accumulate additively in alpha and nested Scaled specs are flattened.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import DimensionMismatch, InvalidNorm, UnboundedBall
from .intervals import compare_exp
from .linalg import leading_principal_minors, span_rank


def parse_rational(s) -> Fraction:
    """Parse a 'p/q' string (or int) into a Fraction."""
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, Fraction):
        return s
    return Fraction(str(s))


def format_rational(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class Ellipsoid:
    gram: tuple  # tuple of tuples of Fraction

    @property
    def dim(self) -> int:
        return len(self.gram)

    def validate(self) -> None:
        n = self.dim
        for row in self.gram:
            if len(row) != n:
                raise InvalidNorm("gram matrix is not square")
        for i in range(n):
            for j in range(i):
                if self.gram[i][j] != self.gram[j][i]:
                    raise InvalidNorm("gram matrix is not symmetric")
        for k, minor in enumerate(leading_principal_minors(self.gram)):
            if minor <= 0:
                raise InvalidNorm(f"leading principal minor {k + 1} is {minor} <= 0")

    def to_json(self) -> dict:
        return {
            "type": "ellipsoid",
            "gram": [[format_rational(x) for x in row] for row in self.gram],
        }


@dataclass(frozen=True)
class PolyMax:
    functionals: tuple  # tuple of tuples of Fraction, m rows

    @property
    def dim(self) -> int:
        return len(self.functionals[0]) if self.functionals else 0

    def validate(self) -> None:
        if not self.functionals:
            raise UnboundedBall("no functionals")
        n = self.dim
        for row in self.functionals:
            if len(row) != n:
                raise InvalidNorm("functionals have inconsistent lengths")
        if span_rank(self.functionals) != n:
            raise UnboundedBall("functionals do not span R^r; unit ball unbounded")

    def to_json(self) -> dict:
        return {
            "type": "polymax",
            "functionals": [[format_rational(x) for x in row] for row in self.functionals],
        }


@dataclass(frozen=True)
class Scaled:
    inner: Union[Ellipsoid, PolyMax]
    alpha: Fraction

    @property
    def dim(self) -> int:
        return self.inner.dim

    def validate(self) -> None:
        if isinstance(self.inner, Scaled):
            raise InvalidNorm("Scaled specs must be flattened")
        self.inner.validate()

    def to_json(self) -> dict:
        return {
            "type": "scaled",
            "alpha": format_rational(self.alpha),
            "inner": self.inner.to_json(),
        }


NormSpec = Union[Ellipsoid, PolyMax, Scaled]


def make_ellipsoid(gram) -> Ellipsoid:
    return Ellipsoid(tuple(tuple(parse_rational(x) for x in row) for row in gram))


def make_polymax(functionals) -> PolyMax:
    return PolyMax(tuple(tuple(parse_rational(x) for x in row) for row in functionals))


def make_scaled(inner: NormSpec, alpha) -> NormSpec:
    """Scale a norm by e^{-alpha}, flattening nested twists additively."""
    alpha = parse_rational(alpha)
    if isinstance(inner, Scaled):
        alpha = alpha + inner.alpha
        inner = inner.inner
    if alpha == 0:
        return inner
    return Scaled(inner, alpha)


def base_spec(norm: NormSpec):
    """(unscaled spec, accumulated alpha)."""
    if isinstance(norm, Scaled):
        return norm.inner, norm.alpha
    return norm, Fraction(0)


@dataclass(frozen=True)
class NormValue:
    """Exact handle ``e^{-alpha} * q`` or ``e^{-alpha} * sqrt(q)``.

    For PolyMax norms q is the rational max |<a_j, v>| (squared=False); for
    Ellipsoid norms q is the rational norm-square (squared=True).
    """

    q: Fraction
    alpha: Fraction
    squared: bool

    def le(self, threshold) -> bool:
        """Decide norm <= threshold exactly (threshold a rational >= 0)."""
        return self._cmp(parse_rational(threshold)) <= 0

    def lt(self, threshold) -> bool:
        return self._cmp(parse_rational(threshold)) < 0

    def _cmp(self, t: Fraction) -> int:
        if self.q == 0:
            return (t < 0) - (t > 0) if t != 0 else 0
        if t <= 0:
            return 1
        if self.squared:
            ratio = self.q / (t * t)
            scale = 2 * self.alpha
        else:
            ratio = self.q / t
            scale = self.alpha
        # norm <=> t  iff  ratio <=> e^scale
        return compare_exp(ratio, scale)

    def log(self) -> float:
        """Natural log of the norm value (-inf at 0)."""
        import math

        if self.q == 0:
            return float("-inf")
        base = math.log(self.q)
        if self.squared:
            base /= 2
        return base - float(self.alpha)

    def to_float(self) -> float:
        import math

        return math.exp(self.log()) if self.q != 0 else 0.0


@dataclass(frozen=True)
class NormedModule:
    rank: int
    norm: NormSpec

    def to_json(self) -> dict:
        return {"rank": self.rank, "norm": self.norm.to_json()}

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def make_normed_module(rank: int, norm: NormSpec) -> NormedModule:
    """Validate and freeze a normed module."""
    if rank < 0:
        raise DimensionMismatch("rank must be nonnegative")
    if norm.dim != rank:
        raise DimensionMismatch(f"norm dimension {norm.dim} != rank {rank}")
    norm.validate()
    return NormedModule(rank, norm)


def twist(module: NormedModule, alpha) -> NormedModule:
    """The module with norm scaled by e^{-alpha} (rational alpha)."""
    return NormedModule(module.rank, make_scaled(module.norm, alpha))


def norm_eval(module: NormedModule, v: Sequence[int]) -> NormValue:
    """Exact norm value of an integer (or rational) vector."""
    if len(v) != module.rank:
        raise DimensionMismatch(f"vector length {len(v)} != rank {module.rank}")
    spec, alpha = base_spec(module.norm)
    vv = [parse_rational(x) for x in v]
    if isinstance(spec, Ellipsoid):
        q = Fraction(0)
        for i, gi in enumerate(spec.gram):
            if vv[i]:
                q += vv[i] * sum(g * x for g, x in zip(gi, vv))
        return NormValue(q, alpha, True)
    q = max((abs(sum(a * x for a, x in zip(row, vv))) for row in spec.functionals),
            default=Fraction(0))
    return NormValue(q, alpha, False)


def spec_from_json(data: dict) -> NormSpec:
    kind = data.get("type")
    if kind == "ellipsoid":
        return make_ellipsoid(data["gram"])
    if kind == "polymax":
        return make_polymax(data["functionals"])
    if kind == "scaled":
        return make_scaled(spec_from_json(data["inner"]), parse_rational(data["alpha"]))
    raise InvalidNorm(f"unknown norm type {kind!r}")


def module_from_json(data: dict) -> NormedModule:
    return make_normed_module(int(data["rank"]), spec_from_json(data["norm"]))


def load_module(path: str) -> NormedModule:
    with open(path) as fh:
        return module_from_json(json.load(fh))
