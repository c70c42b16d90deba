"""Vertex sets with infinite index tails, in closed form.

A `SetExpr` denotes a set of vertices of a (possibly infinite) graph.
Vertices are either named (plain strings like "w1") or indexed (pairs
`(base, i)` with `i >= 1`, like `("v", 3)`).  A set is stored as

  * `atoms`: a frozenset of individual vertices, and
  * `tails`: a frozenset of `(base, k)` pairs, each denoting the whole
    ray `{(base, j) : j >= k}`; at most one tail per base.

Canonical form: no atom `(base, j)` with `j >= k` coexists with a tail
`(base, k)` (it is absorbed), and a tail absorbs a contiguous run of
atoms directly below it.  With atoms allowed below a tail, union,
intersection and difference are all closed on this representation.
"""
from __future__ import annotations

from typing import Iterable

from .exactlinalg import sort_key

Vertex = object  # str, or tuple (base, index)


def _is_indexed(v) -> bool:
    return isinstance(v, tuple) and len(v) == 2 and isinstance(v[1], int)


class SetExpr:
    __slots__ = ("atoms", "tails", "_hash")

    def __init__(self, atoms: Iterable = (), tails: Iterable[tuple[str, int]] = ()):
        atom_set = set(atoms)
        tail_map: dict[str, int] = {}
        for base, k in tails:
            if k < 1:
                raise ValueError("tail index must be >= 1")
            old = tail_map.get(base)
            tail_map[base] = k if old is None else min(old, k)
        # absorb atoms that lie inside a tail, then extend tails downward
        for base, k in list(tail_map.items()):
            atom_set = {a for a in atom_set if not (_is_indexed(a) and a[0] == base and a[1] >= k)}
            while (base, k - 1) in atom_set:
                atom_set.discard((base, k - 1))
                k -= 1
            tail_map[base] = k
        for a in atom_set:
            if _is_indexed(a) and a[1] < 1:
                raise ValueError("vertex index must be >= 1")
        self.atoms = frozenset(atom_set)
        self.tails = frozenset(tail_map.items())
        self._hash = hash((self.atoms, self.tails))

    # ------------------------------------------------------------- structure

    def __eq__(self, other) -> bool:
        return isinstance(other, SetExpr) and self.atoms == other.atoms and self.tails == other.tails

    def __hash__(self) -> int:
        return self._hash

    def is_empty(self) -> bool:
        return not self.atoms and not self.tails

    def is_finite(self) -> bool:
        return not self.tails

    def tail_index(self, base: str) -> int | None:
        for b, k in self.tails:
            if b == base:
                return k
        return None

    def __contains__(self, v) -> bool:
        if v in self.atoms:
            return True
        if _is_indexed(v):
            k = self.tail_index(v[0])
            return k is not None and v[1] >= k
        return False

    # ------------------------------------------------------------------- ops

    def union(self, other: "SetExpr") -> "SetExpr":
        return SetExpr(self.atoms | other.atoms, list(self.tails) + list(other.tails))

    def intersect(self, other: "SetExpr") -> "SetExpr":
        atoms = {a for a in self.atoms if a in other} | {a for a in other.atoms if a in self}
        tails = []
        for b, k in self.tails:
            m = other.tail_index(b)
            if m is not None:
                tails.append((b, max(k, m)))
        return SetExpr(atoms, tails)

    def difference(self, other: "SetExpr") -> "SetExpr":
        atoms = {a for a in self.atoms if a not in other}
        tails = []
        for b, k in self.tails:
            m = other.tail_index(b)
            if m is None:
                # remove finitely many atom holes from the ray
                holes = sorted(a[1] for a in other.atoms if _is_indexed(a) and a[0] == b and a[1] >= k)
                if holes:
                    cut = holes[-1] + 1
                    atoms.update((b, j) for j in range(k, cut) if j not in holes)
                    tails.append((b, cut))
                else:
                    tails.append((b, k))
            elif m > k:
                holes = {a[1] for a in other.atoms if _is_indexed(a) and a[0] == b}
                atoms.update((b, j) for j in range(k, m) if j not in holes)
        return SetExpr(atoms, tails)

    def is_subset(self, other: "SetExpr") -> bool:
        if any(a not in other for a in self.atoms):
            return False
        for b, k in self.tails:
            m = other.tail_index(b)
            if m is None or m > k:
                return False
        return True

    # ------------------------------------------------------------ inspection

    def truncate(self, n: int) -> frozenset:
        """Concrete vertex set keeping indexed vertices with index <= n."""
        out = {a for a in self.atoms if not _is_indexed(a) or a[1] <= n}
        for b, k in self.tails:
            out.update((b, j) for j in range(k, n + 1))
        return frozenset(out)

    def named_atoms(self) -> frozenset:
        return frozenset(a for a in self.atoms if not _is_indexed(a))

    def indexed_atoms(self, base: str) -> list[int]:
        return sorted(a[1] for a in self.atoms if _is_indexed(a) and a[0] == base)

    def bases(self) -> set[str]:
        out = {a[0] for a in self.atoms if _is_indexed(a)}
        out.update(b for b, _ in self.tails)
        return out

    def max_index(self) -> int:
        """Largest index mentioned anywhere (atoms or tail starts); 0 if none."""
        idx = [a[1] for a in self.atoms if _is_indexed(a)]
        idx.extend(k for _, k in self.tails)
        return max(idx, default=0)

    def shift(self, base: str, offset: int) -> "SetExpr":
        """Shift every index of `base` by `offset`, dropping what falls below 1."""
        atoms = set()
        for a in self.atoms:
            if _is_indexed(a) and a[0] == base:
                j = a[1] + offset
                if j >= 1:
                    atoms.add((base, j))
            else:
                atoms.add(a)
        tails = []
        for b, k in self.tails:
            tails.append((b, max(1, k + offset)) if b == base else (b, k))
        return SetExpr(atoms, tails)

    def sort_key(self):
        return (
            tuple(sorted((sort_key(a) for a in self.atoms))),
            tuple(sorted(self.tails)),
        )

    def __repr__(self) -> str:
        parts = []
        for a in sorted(self.atoms, key=sort_key):
            parts.append(a if isinstance(a, str) else f"{a[0]}{a[1]}")
        for b, k in sorted(self.tails):
            parts.append(f"{b}>={k}")
        return "{" + ",".join(parts) + "}"


EMPTY = SetExpr()


def atoms(*vs) -> SetExpr:
    return SetExpr(vs)


def tail(base: str, k: int) -> SetExpr:
    return SetExpr((), [(base, k)])


def union_all(exprs: Iterable[SetExpr]) -> SetExpr:
    out = EMPTY
    for e in exprs:
        out = out.union(e)
    return out
