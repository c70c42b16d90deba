"""Exhaustive sweep behind the no-graph-algebra argument.

The argument: a graph algebra extension of the circle algebra by two
elementary ideals would require a finite graph E with a distinguished
vertex w0 carrying the only loop, two sinks w1 and w2 lying in the
hereditary closure V of w0, and no edge from the complement back into
w0.  The contradiction is that [p_w1] + [p_w2] must vanish in K0 while
the two sink classes stay independent.

`enumerate_candidates` builds every graph in the structural class up to
a vertex and edge budget, and `sweep` checks the K0 membership
[p_w1]+[p_w2] = 0 on each one, returning any violations.

Two classes are supported.  The default class additionally requires
that every vertex of V receives exactly one edge from inside V (the
V-part is an arborescence rooted at w0, plus the loop); this is the
regime in which the range-projection step of the argument is valid.
The wide class drops that condition; it contains genuine violations of
the membership claim, which the sweep surfaces and reports as lying
outside the narrow class.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations, product

from .errors import BudgetError
from .graphs import Graph, canonical_encoding, hereditary_closure, is_acyclic_among
from .ktheory import k0_class_membership
from .reports import Report

LOOP_VERTEX = "w0"
SINKS = ("w1", "w2")


@dataclass(frozen=True)
class Candidate:
    vertices: tuple
    pairs: tuple  # (src, dst) with multiplicity as repetition

    def graph(self) -> Graph:
        edges = [(f"e{i}", s, d) for i, (s, d) in enumerate(self.pairs)]
        return Graph(self.vertices, edges)


def _structural_ok(g: Graph, wide: bool) -> tuple[bool, str]:
    """Check the filters that define the enumeration class.

    Used both as an internal assertion on enumerated candidates and as
    a public classifier for externally supplied graphs.
    """
    vs = set(g.vertices)
    if LOOP_VERTEX not in vs or not set(SINKS) <= vs:
        return False, "missing w0/w1/w2"
    sinks = set(g.sinks())
    if sinks != set(SINKS):
        return False, f"sinks are {sorted(sinks)}, need exactly {list(SINKS)}"
    loops = [e for e in g.edges if g.src[e] == g.dst[e]]
    if len(loops) != 1 or g.src[loops[0]] != LOOP_VERTEX:
        return False, "need exactly one loop, at w0"
    if any(g.dst[e] == LOOP_VERTEX and g.src[e] != LOOP_VERTEX for e in g.edges):
        return False, "edge into w0 from elsewhere"
    v_set = hereditary_closure(g, [LOOP_VERTEX])
    if not set(SINKS) <= v_set:
        return False, "a sink is outside the hereditary closure of w0"
    rest = frozenset(vs - v_set)
    if not is_acyclic_among(g, frozenset(vs - {LOOP_VERTEX})):
        return False, "second cycle outside the loop"
    for v in rest:
        if not g.out_edges(v):
            return False, f"{v} outside V emits nothing (third sink)"
    if not wide:
        for v in sorted(v_set - {LOOP_VERTEX}):
            feed = [e for e in g.edges if g.dst[e] == v and g.src[e] in v_set]
            if len(feed) != 1:
                return False, f"{v} receives {len(feed)} edges from V (need exactly 1)"
        loop_feed = [e for e in g.edges if g.dst[e] == LOOP_VERTEX]
        if len(loop_feed) != 1:
            return False, "w0 receives more than its loop"
    return True, ""


def _arborescences(extra: tuple) -> list[tuple]:
    """Edge lists (parent -> child) of arborescences on {w0} + extra + sinks,
    rooted at w0, in which every extra vertex has a child and the sinks are
    leaves.  Extra vertices are interchangeable; results are deduped by a
    canonical encoding."""
    nodes = list(SINKS) + list(extra)
    parents_choices = []
    for v in nodes:
        # sinks cannot be parents
        opts = [LOOP_VERTEX] + [x for x in extra if x != v]
        parents_choices.append(opts)
    out = set()
    for assignment in product(*parents_choices):
        parent = dict(zip(nodes, assignment))
        # acyclicity / reachability from w0
        ok = True
        for v in nodes:
            seen = set()
            cur = v
            while cur != LOOP_VERTEX:
                if cur in seen:
                    ok = False
                    break
                seen.add(cur)
                cur = parent[cur]
            if not ok:
                break
        if not ok:
            continue
        children = {x: 0 for x in extra}
        for v in nodes:
            if parent[v] in children:
                children[parent[v]] += 1
        if any(c == 0 for c in children.values()):
            continue
        edges = tuple(sorted((parent[v], v) for v in nodes))
        # canonical under permuting the interchangeable extra vertices
        best = edges
        for perm in permutations(extra):
            rename = dict(zip(extra, perm))
            rename[LOOP_VERTEX] = LOOP_VERTEX
            for s in SINKS:
                rename[s] = s
            cand = tuple(sorted((rename[a], rename[b]) for a, b in edges))
            if cand < best:
                best = cand
        out.add(best)
    return sorted(out)


def _v_parts_wide(extra: tuple, budget: int) -> list[tuple]:
    """All V-internal edge multisets for the wide class: hereditary
    reachability from w0, single loop, nothing into w0, every extra
    vertex emits (no third sink), total edges <= budget."""
    v_nodes = (LOOP_VERTEX,) + extra + SINKS
    slots = [(s, d) for s in (LOOP_VERTEX,) + extra for d in v_nodes if d != LOOP_VERTEX]
    out = set()
    max_extra_edges = budget - 1  # one edge is the loop
    for count in range(len(extra) + len(SINKS), max_extra_edges + 1):
        for combo in combinations_with_replacement(slots, count):
            pairs = ((LOOP_VERTEX, LOOP_VERTEX),) + combo
            g = Candidate(v_nodes, pairs).graph()
            if hereditary_closure(g, [LOOP_VERTEX]) != frozenset(v_nodes):
                continue
            if set(g.sinks()) != set(SINKS):
                continue
            if not is_acyclic_among(g, frozenset(v_nodes) - {LOOP_VERTEX}):
                continue
            best = tuple(sorted(pairs))
            for perm in permutations(extra):
                rename = dict(zip(extra, perm))
                rename[LOOP_VERTEX] = LOOP_VERTEX
                for s in SINKS:
                    rename[s] = s
                cand = tuple(sorted((rename[a], rename[b]) for a, b in pairs))
                if cand < best:
                    best = cand
            out.add(best)
    return sorted(out)


def _h_parts(h_nodes: tuple, v_targets: tuple, budget: int) -> list[tuple]:
    """Edge multisets for the part outside V: each h-vertex emits at
    least one edge, targets are V \\ {w0} or later h-vertices (acyclic),
    multiset total <= budget.  Deduped under h-vertex permutations that
    preserve the forward (acyclic) orientation."""
    if not h_nodes:
        return [()]
    slots = []
    for i, h in enumerate(h_nodes):
        for t in v_targets + h_nodes[i + 1 :]:
            slots.append((h, t))
    out = set()
    for count in range(len(h_nodes), budget + 1):
        for combo in combinations_with_replacement(slots, count):
            srcs = {s for s, _ in combo}
            if len(srcs) != len(h_nodes):
                continue  # some h-vertex emits nothing
            best = tuple(sorted(combo))
            for perm in permutations(h_nodes):
                rename = dict(zip(h_nodes, perm))
                renamed = []
                ok = True
                order = {h: i for i, h in enumerate(h_nodes)}
                for a, b in combo:
                    na = rename.get(a, a)
                    nb = rename.get(b, b)
                    if nb in order and order[na] >= order[nb]:
                        ok = False
                        break
                    renamed.append((na, nb))
                if ok:
                    cand = tuple(sorted(renamed))
                    if cand < best:
                        best = cand
            out.add(best)
    return sorted(out)


def enumerate_candidates(max_vertices: int, max_edges: int = 10, wide: bool = False) -> list[Candidate]:
    if max_vertices > 7 or max_edges > 14:
        raise BudgetError(
            f"sweep budget exceeded (max_vertices {max_vertices} > 7 or max_edges {max_edges} > 14); "
            "this enumeration is meant for desk-scale checks"
        )
    if max_vertices < 3:
        return []
    cands: list[Candidate] = []
    spare = max_vertices - 3
    for n_extra in range(spare + 1):
        extra = tuple(f"x{i+1}" for i in range(n_extra))
        v_nodes = (LOOP_VERTEX,) + extra + SINKS
        if wide:
            v_parts = _v_parts_wide(extra, max_edges)
        else:
            v_parts = [
                ((LOOP_VERTEX, LOOP_VERTEX),) + arb for arb in _arborescences(extra)
            ]
        for n_h in range(spare - n_extra + 1):
            h_nodes = tuple(f"t{i+1}" for i in range(n_h))
            v_targets = extra + SINKS
            for v_pairs in v_parts:
                rem = max_edges - len(v_pairs)
                if rem < len(h_nodes):
                    continue
                for h_pairs in _h_parts(h_nodes, v_targets, rem):
                    cands.append(Candidate(v_nodes + h_nodes, tuple(sorted(v_pairs + h_pairs))))
    # dedupe whole candidates (h-parts into different arborescences can collide)
    seen = set()
    uniq = []
    for c in cands:
        enc = canonical_encoding(c.graph())
        if enc not in seen:
            seen.add(enc)
            uniq.append(c)
    return uniq


@dataclass
class SweepResult:
    candidates_checked: int
    violations: list
    wide: bool
    report: Report


def check_candidate(g: Graph, wide: bool = False) -> tuple[bool, str]:
    """Classify a graph and, if it is in class, test the K0 membership.

    Returns (violation, detail): violation is True when the graph lies
    in the requested class but [p_w1]+[p_w2] is NOT zero in K0.
    """
    ok, why = _structural_ok(g, wide)
    if not ok:
        return False, f"outside class: {why}"
    member, cert = k0_class_membership(g, {SINKS[0]: 1, SINKS[1]: 1})
    if member:
        return False, f"member, certificate {cert}"
    return True, "in class but [p_w1]+[p_w2] != 0 in K0"


def sweep(max_vertices: int, max_edges: int = 10, wide: bool = False, jobs: int = 1) -> SweepResult:
    cands = enumerate_candidates(max_vertices, max_edges, wide)
    rep = Report(f"obstruction sweep ({'wide' if wide else 'default'} class, "
                 f"<= {max_vertices} vertices, <= {max_edges} edges)")
    violations = []

    def work(c: Candidate):
        g = c.graph()
        ok, why = _structural_ok(g, wide)
        if not ok:
            raise AssertionError(f"enumerator produced out-of-class candidate: {why}: {c.pairs}")
        member, _ = k0_class_membership(g, {SINKS[0]: 1, SINKS[1]: 1})
        return c, member

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(work, cands))
    else:
        results = [work(c) for c in cands]
    for c, member in results:
        if not member:
            violations.append(c)
    rep.add("candidates enumerated", True, str(len(cands)))
    rep.add(
        "[p_w1]+[p_w2] = 0 throughout" if not wide else "membership verdicts collected",
        (not violations) if not wide else True,
        f"{len(violations)} violation(s)" + (f", e.g. {violations[0].pairs}" if violations else ""),
    )
    return SweepResult(len(cands), violations, wide, rep)
