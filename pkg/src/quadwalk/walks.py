"""Quadrant walks with small steps: models, exact counts and boundary sections."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from .laurent import LaurentPolynomial
from .report import CheckResult
from .series import TruncatedLaurentSeries, UnivariateSeries

Step = Tuple[int, int]

COMPASS: Dict[str, Step] = {
    "E": (1, 0),
    "NE": (1, 1),
    "N": (0, 1),
    "NW": (-1, 1),
    "W": (-1, 0),
    "SW": (-1, -1),
    "S": (0, -1),
    "SE": (1, -1),
}
_NAMES = {v: k for k, v in COMPASS.items()}


@dataclass(frozen=True)
class StepModel:
    """A multiset of small steps; ``steps`` is a sorted tuple of
    ``((dx, dy), multiplicity)`` pairs."""

    name: str
    steps: Tuple[Tuple[Step, int], ...]

    def __post_init__(self):
        if not self.steps:
            raise ValueError("a step model needs at least one step")
        seen = set()
        for (dx, dy), m in self.steps:
            if dx not in (-1, 0, 1) or dy not in (-1, 0, 1) or (dx, dy) == (0, 0):
                raise ValueError(f"({dx}, {dy}) is not a small step")
            if m < 1 or int(m) != m:
                raise ValueError(f"multiplicity of ({dx}, {dy}) must be a positive integer")
            if (dx, dy) in seen:
                raise ValueError(f"step ({dx}, {dy}) listed twice")
            seen.add((dx, dy))

    @classmethod
    def from_mapping(cls, name: str, steps: Mapping) -> "StepModel":
        items = []
        for k, m in steps.items():
            step = COMPASS[k] if isinstance(k, str) else tuple(k)
            if m:
                items.append((step, int(m)))
        return cls(name, tuple(sorted(items)))

    @property
    def weights(self) -> Dict[Step, int]:
        return dict(self.steps)

    @property
    def is_weighted(self) -> bool:
        return any(m > 1 for _, m in self.steps)

    def label(self) -> str:
        parts = []
        for step, m in sorted(self.steps, key=lambda s: list(COMPASS.values()).index(s[0])):
            parts.append(_NAMES[step] + (f"x{m}" if m > 1 else ""))
        return "{" + ",".join(parts) + "}"

    def word_steps(self) -> List[Step]:
        """Steps with repetition, one entry per unit of multiplicity."""
        return [s for s, m in self.steps for _ in range(m)]


def _model(name: str, **steps: int) -> StepModel:
    return StepModel.from_mapping(name, steps)


def weighted_model(lam: int) -> StepModel:
    """{W, SW, SE, NE, E x2, S x lam}."""
    if lam < 0:
        raise ValueError("lambda must be non-negative")
    return _model(f"weighted-{lam}", W=1, SW=1, SE=1, NE=1, E=2, S=lam)


# Unweighted small-step models; the first four are the ones whose only
# up-step is NE.
UNWEIGHTED = {
    "gessel": _model("gessel", E=1, NE=1, W=1, SW=1),
    "kreweras": _model("kreweras", W=1, S=1, NE=1),
    "w-se-ne": _model("w-se-ne", W=1, SE=1, NE=1),
    "w-e-se-ne": _model("w-e-se-ne", W=1, E=1, SE=1, NE=1),
    "simple": _model("simple", E=1, N=1, W=1, S=1),
    "diagonal": _model("diagonal", NE=1, NW=1, SE=1, SW=1),
    "king": _model("king", E=1, NE=1, N=1, NW=1, W=1, SW=1, S=1, SE=1),
    "reverse-kreweras": _model("reverse-kreweras", E=1, N=1, SW=1),
    "double-kreweras": _model("double-kreweras", E=1, N=1, SW=1, W=1, S=1, NE=1),
    "gouyou-beauchamps": _model("gouyou-beauchamps", E=1, W=1, NW=1, SE=1),
}

KAUERS_YATCHAK = {
    "ky1": _model("ky1", W=1, NW=1, N=2, NE=1, E=2, SE=1, S=1),
    "ky2": _model("ky2", SW=1, W=2, NW=1, N=1, E=1, SE=1, S=2),
    "ky3": _model("ky3", SW=1, W=2, NW=1, N=2, E=1, NE=1, S=1),
}

DEFAULT_LAMBDA_BOUND = 16


def registry(lambdas=(1,)) -> Dict[str, StepModel]:
    models = dict(UNWEIGHTED)
    for lam in lambdas:
        m = weighted_model(lam)
        models[m.name] = m
    models.update(KAUERS_YATCHAK)
    return models


def get_model(name: str, lam: Optional[int] = None) -> StepModel:
    """Look up a registry model; ``weighted`` takes ``lam`` (or ``weighted-3``)."""
    if name in UNWEIGHTED:
        return UNWEIGHTED[name]
    if name in KAUERS_YATCHAK:
        return KAUERS_YATCHAK[name]
    if name == "weighted":
        return weighted_model(1 if lam is None else lam)
    if name.startswith("weighted-"):
        return weighted_model(int(name.split("-", 1)[1]))
    raise KeyError(f"unknown model {name!r}")


MODEL_NAMES = sorted(UNWEIGHTED) + ["weighted"] + sorted(KAUERS_YATCHAK)


class WalkTable:
    """Exact counts ``q(i, j; n)`` for ``0 <= i, j <= n <= maxn``."""

    def __init__(self, model: StepModel, counts: List[List[List[int]]]):
        self.model = model
        self.counts = counts

    @property
    def maxn(self) -> int:
        return len(self.counts) - 1

    def __call__(self, i: int, j: int, n: int) -> int:
        if n < 0 or n > self.maxn:
            raise IndexError(f"n={n} outside 0..{self.maxn}")
        if i < 0 or j < 0 or i > n or j > n:
            return 0
        return self.counts[n][i][j]

    def nonzero(self) -> Iterator[Tuple[int, int, int, int]]:
        """Yield ``(n, i, j, q(i, j; n))`` for every nonzero count."""
        for n, layer in enumerate(self.counts):
            for i, row in enumerate(layer):
                for j, v in enumerate(row):
                    if v:
                        yield n, i, j, v

    def with_count(self, i: int, j: int, n: int, value: int) -> "WalkTable":
        """Copy with one entry replaced (fault injection)."""
        counts = [[list(row) for row in layer] for layer in self.counts]
        counts[n][i][j] = value
        return WalkTable(self.model, counts)

    def truncated(self, maxn: int) -> "WalkTable":
        return WalkTable(self.model, self.counts[: maxn + 1])


def count_walks(model: StepModel, maxn: int) -> WalkTable:
    """Dynamic programming over the length: ``q(., .; n)`` from ``q(., .; n-1)``."""
    if maxn < 0:
        raise ValueError("maxn must be non-negative")
    steps = model.steps
    counts = [[[1]]]
    for n in range(1, maxn + 1):
        prev = counts[-1]
        cur = [[0] * (n + 1) for _ in range(n + 1)]
        for i, row in enumerate(prev):
            for j, v in enumerate(row):
                if not v:
                    continue
                for (dx, dy), m in steps:
                    a, b = i + dx, j + dy
                    if a >= 0 and b >= 0:
                        cur[a][b] += m * v
        counts.append(cur)
    return WalkTable(model, counts)


def enumerate_endpoints(model: StepModel, n: int) -> Counter:
    """Endpoints of all quadrant walks of length ``n``, by depth-first search
    over step words (a step of multiplicity ``m`` is ``m`` distinct letters)."""
    letters = model.word_steps()
    ends: Counter = Counter()

    def walk(i, j, left):
        if not left:
            ends[(i, j)] += 1
            return
        for dx, dy in letters:
            a, b = i + dx, j + dy
            if a >= 0 and b >= 0:
                walk(a, b, left - 1)

    walk(0, 0, n)
    return ends


def boundary_sections(table: WalkTable):
    """``(Q(x,0), Q(0,y), Q(0,0))`` as series truncated at ``table.maxn``."""
    N = table.maxn
    qx0 = [LaurentPolynomial([layer[i][0] for i in range(n + 1)], 0, "x") for n, layer in enumerate(table.counts)]
    q0y = [LaurentPolynomial(list(layer[0]), 0, "y") for layer in table.counts]
    q00 = [layer[0][0] for layer in table.counts]
    return (
        TruncatedLaurentSeries(qx0, 0, N, "x"),
        TruncatedLaurentSeries(q0y, 0, N, "y"),
        UnivariateSeries(q00, 0, N),
    )


def ascending_factorial(a: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for k in range(n):
        out *= a + k
    return out


def gessel_closed_form(n: int) -> Fraction:
    """``16^n (5/6)_n (1/2)_n / ((5/3)_n (2)_n)``, the number of Gessel
    excursions of length ``2n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return (
        16**n
        * ascending_factorial(Fraction(5, 6), n)
        * ascending_factorial(Fraction(1, 2), n)
        / (ascending_factorial(Fraction(5, 3), n) * ascending_factorial(Fraction(2), n))
    )


# ---------------------------------------------------------------------------
# functional equation


def boundary_corrections(model: StepModel) -> List[Tuple[Step, int, str]]:
    """Which sections each forbidden step subtracts: ``"x0"`` for ``Q(x,0)``,
    ``"0y"`` for ``Q(0,y)`` and ``"both"`` for ``Q(x,0)+Q(0,y)-Q(0,0)``."""
    out = []
    for (dx, dy), m in model.steps:
        if dx == -1 and dy == -1:
            out.append(((dx, dy), m, "both"))
        elif dx == -1:
            out.append(((dx, dy), m, "0y"))
        elif dy == -1:
            out.append(((dx, dy), m, "x0"))
    return out


def _restricted(layer, kind: str) -> Dict[Tuple[int, int], int]:
    out: Dict[Tuple[int, int], int] = {}
    if kind in ("x0", "both"):
        for i, row in enumerate(layer):
            if row[0]:
                out[(i, 0)] = out.get((i, 0), 0) + row[0]
    if kind in ("0y", "both"):
        for j, v in enumerate(layer[0]):
            if v:
                out[(0, j)] = out.get((0, j), 0) + v
    if kind == "both" and layer[0][0]:
        out[(0, 0)] -= layer[0][0]
    return out


def verify_functional_equation(model: StepModel, table: WalkTable) -> CheckResult:
    """Compare ``xy K(x,y) Q(x,y)`` with ``xy - t xy C(x,y)`` coefficientwise,
    where ``C`` collects the sections removed by steps leaving the quadrant."""
    if any(abs(dx) > 1 or abs(dy) > 1 for (dx, dy), _ in model.steps):
        raise ValueError("no boundary-correction pattern for large steps")
    corr = boundary_corrections(model)
    N = table.maxn
    for n in range(N + 1):
        diff: Dict[Tuple[int, int], int] = {}

        def add(key, v):
            diff[key] = diff.get(key, 0) + v

        for i, row in enumerate(table.counts[n]):
            for j, v in enumerate(row):
                if v:
                    add((i + 1, j + 1), v)
        if n == 0:
            add((1, 1), -1)
        else:
            prev = table.counts[n - 1]
            for i, row in enumerate(prev):
                for j, v in enumerate(row):
                    if v:
                        for (dx, dy), m in model.steps:
                            add((i + 1 + dx, j + 1 + dy), -m * v)
            for (dx, dy), m, kind in corr:
                for (i, j), v in _restricted(prev, kind).items():
                    add((i + 1 + dx, j + 1 + dy), m * v)
        bad = {k: v for k, v in diff.items() if v}
        if bad:
            (i, j), v = min(bad.items())
            return CheckResult(
                f"functional-equation[{model.name}]", N, False, n,
                f"t^{n}: coefficient of x^{i} y^{j} off by {v}",
            )
    return CheckResult(f"functional-equation[{model.name}]", N, True)
