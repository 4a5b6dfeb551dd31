"""Triple Product Property verification.

A triple (S, T, U) of non-empty subsets fulfills the TPP when every
product s*t*u = 1 with s, t, u drawn from the right quotients Q(S),
Q(T), Q(U) forces s = t = u = 1. The check scans pairs (s, t) and tests
u = (s*t)^-1 for membership in Q(U) by bit-vector lookup.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import errors
from .groups import ElementSet, Group

__all__ = [
    "TppTriple",
    "TppVerdict",
    "right_quotient",
    "satisfies_tpp",
    "verify_triple_report",
]


@dataclass(frozen=True)
class TppTriple:
    """Subset triple with its size |S|*|T|*|U|."""

    S: ElementSet
    T: ElementSet
    U: ElementSet

    def __post_init__(self):
        if len(self.S) == 0 or len(self.T) == 0 or len(self.U) == 0:
            raise errors.EmptySet("TPP triple components must be non-empty")

    @property
    def size(self) -> int:
        return len(self.S) * len(self.T) * len(self.U)


@dataclass(frozen=True)
class TppVerdict:
    """Outcome of a TPP check; a failing verdict carries the first
    violating (s, t, u) in row-major scan order over Q(S) x Q(T)."""

    holds: bool
    witness: tuple | None = None
    witness_labels: tuple | None = None


def right_quotient(G: Group, X: ElementSet) -> ElementSet:
    """Q(X) = {x * y^-1 : x, y in X}; equals X when X is a subgroup."""
    if len(X) == 0:
        raise errors.EmptySet("right quotient of the empty set")
    if X.is_subgroup:
        return ElementSet(X.mask, is_subgroup=True)
    mul = G.mul
    inv = G.inv
    idxs = list(X.indices())
    inv_idxs = [inv[y] for y in idxs]
    mask = 0
    for x in idxs:
        row = mul[x]
        for iy in inv_idxs:
            mask |= 1 << row[iy]
    return ElementSet(mask)


def satisfies_tpp(G: Group, S: ElementSet, T: ElementSet, U: ElementSet) -> TppVerdict:
    """Decide the TPP for (S, T, U); deterministic first-violation witness."""
    qs = right_quotient(G, S)
    qt = right_quotient(G, T)
    qu = right_quotient(G, U).mask
    mul = G.mul
    inv = G.inv
    t_list = list(qt.indices())
    for s in qs.indices():
        row = mul[s]
        for t in t_list:
            u = inv[row[t]]
            if (qu >> u) & 1 and (s or t):
                return TppVerdict(False, (s, t, u))
    return TppVerdict(True)


def verify_triple_report(G: Group, S: ElementSet, T: ElementSet, U: ElementSet) -> TppVerdict:
    """As satisfies_tpp, with the witness also rendered via group labels."""
    verdict = satisfies_tpp(G, S, T, U)
    if verdict.holds:
        return verdict
    labels = tuple(G.label_of(i) for i in verdict.witness)
    return TppVerdict(False, verdict.witness, labels)
