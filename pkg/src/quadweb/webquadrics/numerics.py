"""Numeric bookkeeping: contracted curve classes, intersection numbers, Euler characteristic identities."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Mapping, Sequence

EXCEPTIONAL_SLOTS = 10  # classes E_1..E_10 over the ten points of the plane
NODE_SLOTS = 46  # classes F_1..F_46 over the nodes of the quintic

# Recorded constants of the small resolution; these are inputs, not computed here.
CONSTANTS = {"h11": 2, "h12": 56, "euler": -108}

CASE_LABELS = {0: "a", 1: "b", 2: "c", 3: "d"}
CONIC_NOTE = "no line in this class (the ideal of the ten points has no cubics); realized as a conic, case (d)"


@dataclass(frozen=True)
class ContractedClass:
    d: int
    m: tuple[int, ...]  # nonzero multiplicities at the ten points, nonincreasing
    n_sum: int  # how many of the F_j appear (each with coefficient 1)
    case: str
    note: str = ""

    @property
    def genus_check(self) -> int:
        return self.d * self.d - 3 * self.d - sum(x * x - x for x in self.m)

    def class_string(self) -> str:
        parts = [{1: "L"}.get(self.d, f"{self.d}L")] if self.d else []
        for i, x in enumerate(self.m, 1):
            if x == 1:
                parts.append(f"- E{i}")
            elif x == -1:
                parts.append(f"+ E{i}")
            elif x > 0:
                parts.append(f"- {x}E{i}")
            else:
                parts.append(f"+ {-x}E{i}")
        parts.extend(f"- F{j}" for j in range(1, self.n_sum + 1))
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else s

    def multiplicity_string(self) -> str:
        counts: dict[int, int] = {}
        for x in self.m:
            counts[x] = counts.get(x, 0) + 1
        return "(" + ",".join(f"{v}" if c == 1 else f"{v}^{c}" for v, c in sorted(counts.items(), reverse=True)) + ")"


def multiplicity_vectors(total: int, squares: int, slots: int = EXCEPTIONAL_SLOTS) -> list[tuple[int, ...]]:
    """Nonincreasing nonzero integer tuples of length <= ``slots`` with the given sum and sum of squares."""
    bound = isqrt(squares)
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], s: int, q: int, cap: int):
        if s == total and q == squares:
            out.append(tuple(prefix))
        left = slots - len(prefix)
        if left == 0:
            return
        for v in range(cap, -bound - 1, -1):
            if v == 0:
                continue
            q2 = q + v * v
            if q2 > squares:
                continue
            s2 = s + v
            rest_s, rest_q, k = total - s2, squares - q2, left - 1
            # Cauchy-Schwarz on the remaining k entries: rest_s^2 <= k * rest_q
            if rest_s * rest_s > k * rest_q:
                continue
            rec(prefix + [v], s2, q2, v)

    rec([], 0, 0, bound)
    return out


def class_solutions(d: int) -> list[tuple[int, ...]]:
    """Multiplicity vectors for degree ``d``: sum m = 4d - 1, sum m^2 = d^2 + d + 1."""
    return multiplicity_vectors(4 * d - 1, d * d + d + 1)


def contracted_class_enum(d_max: int = 12) -> list[ContractedClass]:
    """All solutions (d, m, sum n) with 0 <= sum n = 4 - d <= 46, scanning d in [0, d_max]."""
    out = []
    for d in range(0, d_max + 1):
        n_sum = 4 - d
        for m in class_solutions(d):
            if not 0 <= n_sum <= NODE_SLOTS:
                continue
            note = CONIC_NOTE if d == 3 else ""
            out.append(ContractedClass(d, m, n_sum, CASE_LABELS.get(d, "?"), note))
    return out


def intersection_numbers(table: Mapping[str, int] | Sequence[int], combo: tuple[int, int]) -> int:
    """``(a D + b E)^3`` from the four cubic monomials ``D^3, D^2E, DE^2, E^3``."""
    if isinstance(table, Mapping):
        d3, d2e, de2, e3 = (table[k] for k in ("D3", "D2E", "DE2", "E3"))
    else:
        d3, d2e, de2, e3 = table
    a, b = combo
    return a ** 3 * d3 + 3 * a * a * b * d2e + 3 * a * b * b * de2 + b ** 3 * e3


def quintic_euler_identity(nodes: int, resolution_euler: int = CONSTANTS["euler"]) -> tuple[int, int, bool]:
    """Euler number of the nodal quintic two ways: small resolution minus nodes, and -200 + nodes."""
    lhs = resolution_euler - nodes
    rhs = -200 + nodes
    return lhs, rhs, lhs == rhs
