"""Finding a block that some power of an injective map pushes into itself.

Given blocks ``X_1..X_n`` partitioning a set and an injection ``f`` such
that every ``f^m(X_i)`` is disjoint from, inside, or around every ``X_j``,
the search below produces ``(i, m)`` with ``f^m(X_i) ⊆ X_i``, and a proper
inclusion with a separating piece when ``f`` is not onto.

The loop over ``m`` looks at the 0/1 matrix of which blocks ``f^m(X_i)``
meets.  If every row has a single entry the rows define a self-map ``k`` of
the block indices and a cycle of ``k`` through the orbit of block 0 gives
the answer.  Otherwise the matrices must eventually repeat (there are at
most ``2^(n^2)`` of them); a repeat exhibits a union of at least two but not
all blocks that some power of ``f`` maps onto itself, and the search recurses
into it.  Powers found in a subsystem are rescaled to powers of ``f``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any

from .cylinders import BudgetExceeded
from .errors import InvariantBroken, TreelikeError
from .setsystems import Matrix, SetSystem

DEFAULT_MAX_POWER = 64


@dataclass(frozen=True)
class ContractionWitness:
    block: int
    power: int
    strict: bool = False
    separator: Any = None


@dataclass(frozen=True)
class Case1Step:
    level: int
    n: int
    m: int
    k: tuple[int, ...]
    p: int
    q: int
    block: int
    power: int
    iterations: int
    case: str = "case1"


@dataclass(frozen=True)
class Case2Step:
    level: int
    n: int
    m1: int
    m2: int
    row: int
    support: tuple[int, ...]
    iterations: int
    case: str = "case2"


@dataclass(frozen=True)
class ComplementStep:
    """``f^m(X_i) = X_i``; continue on the other blocks with ``f^m``."""

    level: int
    n: int
    block: int
    power: int
    remaining: tuple[int, ...]
    case: str = "complement"


@dataclass(frozen=True)
class StrictStep:
    level: int
    n: int
    block: int
    power: int
    separator: Any
    case: str = "strict"


def step_dict(step) -> dict:
    d = asdict(step)
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in d.items()}


@dataclass
class AlgorithmTrace:
    steps: list = field(default_factory=list)

    def append(self, step) -> None:
        self.steps.append(step)

    def as_list(self) -> list[dict]:
        return [step_dict(s) for s in self.steps]

    def __iter__(self):
        return iter(self.steps)

    def __len__(self) -> int:
        return len(self.steps)


class SearchError(TreelikeError):
    def __init__(self, message: str, trace: AlgorithmTrace | None = None):
        super().__init__(message)
        self.trace = trace if trace is not None else AlgorithmTrace()


class HypothesisViolation(SearchError):
    """Blocks ``i`` and ``j`` break the disjoint-or-nested hypothesis at ``power``.

    ``power`` is in units of the original map.  ``j`` is None when the
    failure is one of the structural consequences checked in the repeat
    branch rather than a direct pairwise comparison.
    """

    def __init__(self, power: int, i: int, j: int | None, trace=None, reason: str = ""):
        self.power, self.i, self.j, self.reason = power, i, j, reason
        msg = f"hypothesis fails at power {power} for blocks ({i}, {j})"
        super().__init__(msg + (f": {reason}" if reason else ""), trace)


class Exhausted(SearchError):
    pass


class NotApplicable(SearchError):
    pass


def pigeonhole_horizon(n: int, max_power: int) -> int:
    return min(max_power, 2 ** (n * n) + 1)


def _first_cycle(k: tuple[int, ...]) -> tuple[int, int]:
    """Least ``0 < p < q`` with ``k^p(0) == k^q(0)``."""
    first_seen = {}
    x, t = 0, 0
    while True:
        t += 1
        x = k[x]
        if x in first_seen:
            return first_seen[x], t
        first_seen[x] = t


def _search(sys: SetSystem, labels: list[int], max_power: int, trace: AlgorithmTrace,
            level: int, scale: int) -> tuple[int, int]:
    n = sys.n
    horizon = pigeonhole_horizon(n, max_power)
    seen: dict[Matrix, int] = {}
    for m in range(1, horizon + 1):
        bad = sys.hypothesis_violation(m)
        if bad is not None:
            raise HypothesisViolation(m * scale, labels[bad[0]], labels[bad[1]], trace)
        A = sys.incidence(m)
        rows = [tuple(j for j in range(n) if A[i][j]) for i in range(n)]
        if any(not r for r in rows):
            raise InvariantBroken(f"an image misses every block at power {m * scale}")
        if all(len(r) == 1 for r in rows):
            k = tuple(r[0] for r in rows)
            p, q = _first_cycle(k)
            i = 0
            for _ in range(p):
                i = k[i]
            pw = (q - p) * m
            if not sys.image_within(i, pw, i):
                raise InvariantBroken(f"cycle of k does not give an invariant block at level {level}")
            trace.append(Case1Step(level, n, m, k, p, q, labels[i], pw * scale, m))
            return i, pw
        if A in seen:
            m1, m2 = seen[A], m
            p = next(i for i in range(n) if len(rows[i]) >= 2)
            Q = rows[p]
            if len(Q) >= n:
                raise HypothesisViolation(m1 * scale, labels[p], None, trace,
                                          "image of one block meets every block")
            for mm in (m1, m2):
                if not sys.image_is_union(p, mm, Q):
                    raise HypothesisViolation(mm * scale, labels[p], None, trace,
                                              "image is not the union of the blocks it meets")
            trace.append(Case2Step(level, n, m1 * scale, m2 * scale, labels[p],
                                   tuple(labels[q] for q in Q), m))
            stride = m2 - m1
            sub = sys.restrict(Q, stride)
            j, pw = _search(sub, [labels[q] for q in Q], max_power, trace, level + 1,
                            scale * stride)
            return Q[j], pw * stride
        seen[A] = m
    raise Exhausted(f"no contracting block found within {horizon} powers at level {level}", trace)


def find_contracting_block(
    sys: SetSystem, max_power: int = DEFAULT_MAX_POWER
) -> tuple[ContractionWitness, AlgorithmTrace]:
    """Some ``(i, m)``, ``m > 0``, with ``f^m(X_i) ⊆ X_i``.

    Raises HypothesisViolation when the disjoint-or-nested hypothesis fails
    at a power the search inspects, and Exhausted when ``max_power`` runs out
    first.
    """
    trace = AlgorithmTrace()
    try:
        i, m = _search(sys, list(range(sys.n)), max_power, trace, 0, 1)
        if not sys.image_within(i, m, i):
            raise InvariantBroken(f"returned block {i} is not invariant under power {m}")
        strict = not sys.image_equals_block(i, m)
    except BudgetExceeded as exc:
        raise Exhausted(str(exc), trace) from exc
    return ContractionWitness(i, m, strict=strict), trace


def _strict(sys: SetSystem, labels: list[int], max_power: int, trace: AlgorithmTrace,
            level: int, scale: int) -> tuple[int, int, Any]:
    n = sys.n
    if n == 1:
        sep = sys.separator(0, 1)
        if sep is None:
            raise InvariantBroken("non-surjective single block has no separator")
        trace.append(StrictStep(level, 1, labels[0], scale, sep))
        return 0, 1, sep
    i, m = _search(sys, labels, max_power, trace, level, scale)
    if not sys.image_equals_block(i, m):
        sep = sys.separator(i, m)
        trace.append(StrictStep(level, n, labels[i], m * scale, sep))
        return i, m, sep
    others = [j for j in range(n) if j != i]
    trace.append(ComplementStep(level, n, labels[i], m * scale, tuple(labels[j] for j in others)))
    sub = sys.restrict(others, m)
    if sub.is_surjective():
        raise InvariantBroken("power of a non-surjective map became surjective on the complement")
    j, pw, sep = _strict(sub, [labels[o] for o in others], max_power, trace, level + 1, scale * m)
    return others[j], pw * m, sep


def find_strictly_contracting_block(
    sys: SetSystem, max_power: int = DEFAULT_MAX_POWER
) -> tuple[ContractionWitness, AlgorithmTrace]:
    """Some ``(i, m)`` with ``f^m(X_i)`` a proper subset of ``X_i``.

    Raises NotApplicable when ``f`` maps onto the union of the blocks.
    """
    trace = AlgorithmTrace()
    try:
        if sys.is_surjective():
            raise NotApplicable("map is surjective", trace)
        i, m, sep = _strict(sys, list(range(sys.n)), max_power, trace, 0, 1)
        if not sys.image_within(i, m, i) or sys.image_equals_block(i, m):
            raise InvariantBroken(f"block {i} is not strictly contracted by power {m}")
    except BudgetExceeded as exc:
        raise Exhausted(str(exc), trace) from exc
    return ContractionWitness(i, m, strict=True, separator=sep), trace
