"""Vertex labelings, the magic-labeling verifier, and exact constant formulas.

A labeling assigns a distinct positive integer to every vertex.  It is
S-magic when every open-neighborhood label sum (the vertex weight) equals a
single constant c, and distance magic when additionally the label set is
{1..order}.  Everything here is exact integer or rational arithmetic; no
floating point enters verification.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .graphs import Graph

__all__ = [
    "LabelSet",
    "Labeling",
    "VerificationReport",
    "NonIntegerConstant",
    "vertex_weight",
    "verify_s_magic",
    "regular_constant",
    "admissible_deleted_labels",
    "constant_bounds",
    "hnp_constant_bounds",
    "HnpBounds",
    "labeling_to_json",
    "labeling_from_json",
]


class NonIntegerConstant(ValueError):
    """The forced magic constant is not an integer; the label set is inadmissible."""


@dataclass(frozen=True)
class LabelSet:
    """Strictly increasing positive labels; alpha is the largest one."""

    values: tuple[int, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("label set must be nonempty")
        if self.values[0] < 1:
            raise ValueError(f"labels must be positive, got {self.values[0]}")
        if any(a >= b for a, b in zip(self.values, self.values[1:])):
            raise ValueError("labels must be strictly increasing")

    @classmethod
    def from_values(cls, values: Iterable[int]) -> "LabelSet":
        vals = sorted(int(v) for v in values)
        if len(set(vals)) != len(vals):
            raise ValueError("labels must be distinct")
        return cls(tuple(vals))

    @classmethod
    def natural(cls, n: int) -> "LabelSet":
        """The distance magic pool {1..n}."""
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def without(cls, ceiling: int, deleted: int) -> "LabelSet":
        """{1..ceiling} minus one deleted label."""
        if not 1 <= deleted <= ceiling:
            raise ValueError(f"deleted label {deleted} outside 1..{ceiling}")
        return cls(tuple(v for v in range(1, ceiling + 1) if v != deleted))

    @property
    def alpha(self) -> int:
        return self.values[-1]

    @property
    def deleted(self) -> tuple[int, ...]:
        """Gaps below alpha: {1..alpha} minus the label values."""
        present = set(self.values)
        return tuple(v for v in range(1, self.alpha + 1) if v not in present)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


@dataclass(frozen=True)
class Labeling:
    """Labels listed by vertex id."""

    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))

    @property
    def label_set(self) -> LabelSet:
        return LabelSet.from_values(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __getitem__(self, v: int) -> int:
        return self.labels[v]


@dataclass
class VerificationReport:
    is_magic: bool
    constant: int | None
    weights: tuple[int, ...]
    violations: list[str] = field(default_factory=list)
    is_distance_magic: bool = False

    def to_json_dict(self) -> dict:
        return {
            "is_magic": self.is_magic,
            "is_distance_magic": self.is_distance_magic,
            "constant": self.constant,
            "weights": list(self.weights),
            "violations": list(self.violations),
        }


def _labels_array(g: Graph, labeling: Labeling | Sequence[int]) -> np.ndarray:
    labels = labeling.labels if isinstance(labeling, Labeling) else tuple(labeling)
    if len(labels) != g.order:
        raise ValueError(
            f"labeling has {len(labels)} entries for a graph of order {g.order}"
        )
    return np.asarray(labels, dtype=np.int64)


def vertex_weight(g: Graph, labeling: Labeling | Sequence[int], u: int) -> int:
    """Sum of labels over the open neighborhood of u (u's own label excluded)."""
    if not 0 <= u < g.order:
        raise ValueError(f"unknown vertex {u}")
    labels = _labels_array(g, labeling)
    return int(sum(labels[v] for v in g.neighbors(u)))


def all_weights(g: Graph, labeling: Labeling | Sequence[int]) -> np.ndarray:
    """Open-neighborhood label sums for every vertex, computed over the arcs."""
    labels = _labels_array(g, labeling)
    _, indices = g.csr()
    w = np.zeros(g.order, dtype=np.int64)
    np.add.at(w, g.arc_sources(), labels[indices])
    return w


def verify_s_magic(g: Graph, labeling: Labeling | Sequence[int]) -> VerificationReport:
    """Full audit: bijectivity onto the label set and constant vertex weights."""
    labels = _labels_array(g, labeling)
    violations: list[str] = []
    if np.any(labels < 1):
        violations.append("non-positive label")
    values, counts = np.unique(labels, return_counts=True)
    for v, c in zip(values, counts):
        if c > 1:
            violations.append(f"label {int(v)} assigned to {int(c)} vertices")
    weights = all_weights(g, labels)
    if weights.min() != weights.max():
        # report a handful of offending pairs against vertex 0
        bad = np.nonzero(weights != weights[0])[0]
        for v in bad[:5]:
            violations.append(
                f"w(0)={int(weights[0])} != w({int(v)})={int(weights[v])}"
            )
    is_magic = not violations
    constant = int(weights[0]) if is_magic else None
    is_dm = bool(
        is_magic and sorted(int(x) for x in labels) == list(range(1, g.order + 1))
    )
    return VerificationReport(
        is_magic=is_magic,
        constant=constant,
        weights=tuple(int(x) for x in weights),
        violations=violations,
        is_distance_magic=is_dm,
    )


# ---------------------------------------------------------------------------
# constant formulas and admissibility
# ---------------------------------------------------------------------------

def regular_constant(n: int, r: int, a: int) -> int:
    """Forced magic constant of an r-regular graph of order n over {1..n+1}\\{a}.

    From n*c = r * (sum of {1..n+1} - a) = r*((n+1)(n+2)/2 - a).  Raises
    NonIntegerConstant when n does not divide the right-hand side, which is
    exactly the mechanism ruling out inadmissible deleted labels.
    """
    if not 1 <= a <= n:
        raise ValueError(f"deleted label {a} outside 1..{n}")
    if r < 1:
        raise ValueError(f"degree must be >= 1, got {r}")
    rhs = r * ((n + 1) * (n + 2) // 2 - a)
    if rhs % n != 0:
        raise NonIntegerConstant(
            f"n={n}, r={r}, a={a}: constant {rhs}/{n} is not an integer"
        )
    return rhs // n


def admissible_deleted_labels(n: int, r: int) -> set[int]:
    """Deleted labels a in {1..n} not excluded by the necessary conditions.

    Always requires the forced constant to be integral.  When both r and n
    are 2 (mod 4) with r >= 6 and n > r, additionally requires a to be even
    and different from 2 and n (the counting obstruction for that residue
    class).  Membership does not promise a labeling exists.
    """
    if r < 1:
        raise ValueError(f"degree must be >= 1, got {r}")
    if n <= r:
        raise ValueError(f"order must exceed degree, got n={n}, r={r}")
    out = set()
    for a in range(1, n + 1):
        try:
            regular_constant(n, r, a)
        except NonIntegerConstant:
            continue
        out.add(a)
    if r % 4 == 2 and n % 4 == 2 and r >= 6:
        out = {a for a in out if a % 2 == 0 and a not in (2, n)}
    return out


def constant_bounds(n: int, r: int) -> tuple[Fraction, Fraction]:
    """Exact bracket for any magic constant over {1..n+1} minus one label.

    Substituting the extreme deleted labels a = n and a = 1 into the forced
    constant gives (nr+r)/2 + r/n <= c <= (nr+3r)/2.
    """
    if r < 1:
        raise ValueError(f"degree must be >= 1, got {r}")
    lower = Fraction(n * r + r, 2) + Fraction(r, n)
    upper = Fraction(n * r + 3 * r, 2)
    return lower, upper


class HnpBounds(NamedTuple):
    lower: int
    upper: int
    highest_removable: int
    lowest_removable: int


def hnp_constant_bounds(n: int, p: int) -> HnpBounds:
    """Constant bracket for the complete multipartite graph, odd n, even p.

    The pool sum of {1..np+1} minus the deleted label must be divisible by
    p, so the removable labels range from p/2 + 1 up to np + 1 - p/2; the
    corresponding constants are (n^2 p + n + 1)/2 * (p-1) and
    (n^2 p + 3n - 1)/2 * (p-1).
    """
    if n % 2 == 0 or n <= 1:
        raise ValueError(f"n must be odd and > 1, got {n}")
    if p % 2 == 1 or p <= 1:
        raise ValueError(f"p must be even and > 1, got {p}")
    lower = (n * n * p + n + 1) // 2 * (p - 1)
    upper = (n * n * p + 3 * n - 1) // 2 * (p - 1)
    return HnpBounds(
        lower=lower,
        upper=upper,
        highest_removable=n * p + 1 - p // 2,
        lowest_removable=p // 2 + 1,
    )


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def labeling_to_json(labeling: Labeling, constant: int | None = None) -> dict:
    return {
        "labels": list(labeling.labels),
        "label_set": list(labeling.label_set.values),
        "constant": constant,
    }


def labeling_from_json(doc: dict | str) -> Labeling:
    if isinstance(doc, str):
        doc = json.loads(doc)
    return Labeling(tuple(int(x) for x in doc["labels"]))
