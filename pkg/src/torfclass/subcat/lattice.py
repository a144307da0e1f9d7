"""Specialization-closed subsets, finite lattices and their DOT export."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from ..affine.rings import format_prime_set, sort_primes


def spec_closed_subsets(poset, within) -> list:
    """Downward-closed subsets of ``within`` for the order restricted to ``within``."""
    within = sort_primes(set(within))
    out = []
    for k in range(len(within) + 1):
        for combo in combinations(within, k):
            s = set(combo)
            if all(p in s for q in s for p in within if poset.leq(p, q)):
                out.append(frozenset(s))
    return out


@dataclass
class Lattice:
    """Nodes are ``(label, payload)`` pairs; ``covers`` are Hasse edges ``(lo, hi)``
    given by node positions."""

    nodes: list = field(default_factory=list)
    covers: list = field(default_factory=list)

    @classmethod
    def from_sets(cls, items, label=None):
        """Build the inclusion lattice of a family of frozensets."""
        label = label or format_prime_set
        items = sorted(set(items), key=lambda s: (len(s), label(s)))
        nodes = [(label(s), s) for s in items]
        covers = []
        for i, a in enumerate(items):
            for j, b in enumerate(items):
                if a < b and not any(a < c < b for c in items):
                    covers.append((i, j))
        return cls(nodes, sorted(covers))

    def __len__(self):
        return len(self.nodes)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def lattice_dot(L: Lattice, name: str = "lattice") -> str:
    """Deterministic DOT digraph with edges pointing up the Hasse diagram."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, (label, _) in enumerate(L.nodes):
        lines.append(f"  n{i} [label={_quote(label)}];")
    for lo, hi in L.covers:
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"
