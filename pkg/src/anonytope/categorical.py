"""Categorical attributes: generalization trees, the product lattice of
per-attribute levels, and anonymity sweeps along monotone lattice chains.

Levels here replace the radius of the numeric case: raising one
attribute's level coarsens the partition of identical generalized
tuples, so a monotone path through the lattice behaves like a filtration
and the same weighted H0 bookkeeping applies, indexed by path position.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import yaml

from .errors import ContractViolation, IngestionError, TreeDefinitionError

LatticeNode = tuple[int, ...]


@dataclass(frozen=True)
class GeneralizationTree:
    """Per-attribute hierarchy; level 0 is the leaves, the root sits at
    level == height, and every leaf is at the same depth."""

    attribute: str
    root: str
    parent: dict[str, str]       # child -> parent, root absent

    @property
    def nodes(self) -> set[str]:
        return set(self.parent) | {self.root}

    @property
    def leaves(self) -> list[str]:
        parents = set(self.parent.values())
        return sorted(n for n in self.nodes
                      if n not in parents and n != self.root) or \
            ([self.root] if not self.parent else [])

    def depth(self, node: str) -> int:
        d = 0
        while node != self.root:
            node = self.parent[node]
            d += 1
        return d

    @property
    def height(self) -> int:
        return max((self.depth(leaf) for leaf in self.leaves), default=0)

    def ancestor(self, value: str, level: int) -> str:
        node = value
        for _ in range(level):
            if node == self.root:
                break
            node = self.parent[node]
        return node


def validate_tree(tree: GeneralizationTree) -> list[str]:
    """All invariant violations, empty when the tree is well formed."""
    problems = []
    if tree.root in tree.parent:
        problems.append(f"root {tree.root!r} has a parent")
    for child, par in tree.parent.items():
        if par not in tree.nodes:
            problems.append(f"node {child!r} has unknown parent {par!r}")
    # reachability: every node must walk up to the root without a cycle
    for node in tree.parent:
        seen = {node}
        cur = node
        while cur != tree.root:
            cur = tree.parent.get(cur)
            if cur is None or cur in seen:
                problems.append(f"node {node!r} cannot reach the root")
                break
            seen.add(cur)
    if not problems:
        depths = {tree.depth(leaf) for leaf in tree.leaves}
        if len(depths) > 1:
            problems.append(
                f"leaves sit at mixed depths {sorted(depths)}; levels "
                f"would be ambiguous")
    return problems


def generalize_value(tree: GeneralizationTree, value: str, level: int) -> str:
    if value not in set(tree.leaves):
        raise ContractViolation(
            f"{value!r} is not a leaf of tree {tree.attribute!r}")
    if not 0 <= level <= tree.height:
        raise ContractViolation(
            f"level {level} outside [0, {tree.height}] "
            f"for tree {tree.attribute!r}")
    return tree.ancestor(value, level)


def trees_from_dict(spec: dict) -> list[GeneralizationTree]:
    """Parse the tree-definition document: per attribute a root name and
    parent -> [children] listing."""
    trees = []
    for attr, body in spec.items():
        if not isinstance(body, dict) or "root" not in body:
            raise TreeDefinitionError(f"attribute {attr!r}: missing root")
        root = str(body["root"])
        parent: dict[str, str] = {}
        for par, children in body.items():
            if par == "root":
                continue
            if not isinstance(children, list):
                raise TreeDefinitionError(
                    f"attribute {attr!r}: children of {par!r} must be a list")
            for child in children:
                child = str(child)
                if child in parent:
                    raise TreeDefinitionError(
                        f"attribute {attr!r}: {child!r} has two parents")
                parent[child] = str(par)
        tree = GeneralizationTree(attribute=attr, root=root, parent=parent)
        problems = validate_tree(tree)
        if problems:
            raise TreeDefinitionError(
                f"attribute {attr!r}: " + "; ".join(problems))
        trees.append(tree)
    return trees


def load_trees(path) -> list[GeneralizationTree]:
    with open(path, "r", encoding="utf-8") as fh:
        spec = yaml.safe_load(fh)
    if not isinstance(spec, dict) or not spec:
        raise TreeDefinitionError(f"{path}: no tree definitions found")
    return trees_from_dict(spec)


@dataclass(frozen=True)
class GeneralizationLattice:
    heights: tuple[int, ...]

    @property
    def node_count(self) -> int:
        out = 1
        for h in self.heights:
            out *= h + 1
        return out

    def nodes(self) -> list[LatticeNode]:
        return sorted(product(*(range(h + 1) for h in self.heights)))

    def edges(self) -> list[tuple[LatticeNode, LatticeNode]]:
        out = []
        for node in self.nodes():
            for i, h in enumerate(self.heights):
                if node[i] < h:
                    succ = node[:i] + (node[i] + 1,) + node[i + 1:]
                    out.append((node, succ))
        return out

    @property
    def bottom(self) -> LatticeNode:
        return tuple(0 for _ in self.heights)

    @property
    def top(self) -> LatticeNode:
        return tuple(self.heights)


def build_lattice(trees: list[GeneralizationTree]) -> GeneralizationLattice:
    if not trees:
        raise ContractViolation("at least one tree is required")
    return GeneralizationLattice(heights=tuple(t.height for t in trees))


def generalized_partition_at(rows: list[tuple], trees, node: LatticeNode):
    """Classes of rows whose generalized tuples at these levels coincide.

    A class of m rows is exactly a generalized anonymity simplex on m
    points.  Row ids are 1-based.
    """
    if len(node) != len(trees):
        raise ContractViolation("node arity does not match tree count")
    buckets: dict[tuple, list[int]] = {}
    for rid, row in enumerate(rows, start=1):
        if len(row) != len(trees):
            raise IngestionError(f"row {rid} has {len(row)} values, "
                                 f"expected {len(trees)}")
        key = tuple(generalize_value(t, str(v), lvl)
                    for t, v, lvl in zip(trees, row, node))
        buckets.setdefault(key, []).append(rid)
    return sorted(tuple(v) for v in buckets.values())


@dataclass(frozen=True)
class ChainStep:
    node: LatticeNode
    classes: tuple[tuple[int, ...], ...]
    k_anonymous: bool


@dataclass(frozen=True)
class ChainReport:
    path: tuple[LatticeNode, ...]
    steps: tuple[ChainStep, ...]
    k: int
    # weighted H0 over path index: (birth index, death index or None,
    # weight steps as (index, size) pairs)
    h0_bars: tuple[tuple[int, int | None, tuple[tuple[int, int], ...]], ...]

    @property
    def first_anonymous_node(self) -> LatticeNode | None:
        for step in self.steps:
            if step.k_anonymous:
                return step.node
        return None


def _is_monotone(path) -> bool:
    for prev, cur in zip(path, path[1:]):
        diffs = [c - p for p, c in zip(prev, cur)]
        if sorted(diffs) != [0] * (len(diffs) - 1) + [1]:
            return False
    return True


def chain_sweep(rows, trees, path, k: int) -> ChainReport:
    """Partitions, verdicts, and the weighted H0 barcode along one
    monotone lattice path."""
    path = tuple(tuple(n) for n in path)
    if not path:
        raise ContractViolation("path must be nonempty")
    if not _is_monotone(path):
        raise ContractViolation("path must increment one level per step")
    steps = []
    partitions = []
    for node in path:
        classes = generalized_partition_at(rows, trees, node)
        partitions.append(classes)
        steps.append(ChainStep(
            node=node, classes=tuple(classes),
            k_anonymous=all(len(c) >= k for c in classes)))

    # elder-rule merge tracking over path index
    initial = partitions[0]
    rep = {}          # row id -> representative (min id of its bar's class)
    members = {}
    bar_steps = {}
    for cls in initial:
        r = min(cls)
        members[r] = list(cls)
        bar_steps[r] = [(0, len(cls))]
        for rid in cls:
            rep[rid] = r
    deaths: dict[int, int] = {}
    for idx, classes in enumerate(partitions[1:], start=1):
        for cls in classes:
            reps = sorted({rep[rid] for rid in cls})
            if len(reps) == 1:
                continue
            survivor = reps[0]
            for dying in reps[1:]:
                deaths[dying] = idx
                members[survivor] += members.pop(dying)
            bar_steps[survivor].append((idx, len(members[survivor])))
            for rid in cls:
                rep[rid] = survivor
    bars = tuple(sorted(
        ((0, deaths.get(r), tuple(bar_steps[r])) for r in bar_steps),
        key=lambda b: (b[1] is None, b[1] or 0, b[2])))
    return ChainReport(path=path, steps=tuple(steps), k=k, h0_bars=bars)


def lower_chain(lattice: GeneralizationLattice) -> list[LatticeNode]:
    """Bottom row of the lattice diagram: all attributes at level 0, the
    last one swept from 0 to its height."""
    base = list(lattice.bottom)
    return [tuple(base[:-1]) + (s,) for s in range(lattice.heights[-1] + 1)]


def upper_chain(lattice: GeneralizationLattice) -> list[LatticeNode]:
    """Top row: all attributes but the last at their maximum level."""
    return [tuple(lattice.heights[:-1]) + (s,)
            for s in range(lattice.heights[-1] + 1)]


STRATEGY_LOWER_THEN_UPPER = "lower_then_upper"
STRATEGY_EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True)
class LatticeSearchResult:
    strategy: str
    nodes: tuple[LatticeNode, ...]          # earliest k-anonymous nodes
    reports: tuple[ChainReport, ...]
    upper_chain_skipped: bool
    conclusive: bool
    note: str


def lattice_search(rows, trees, k: int,
                   strategy: str = STRATEGY_LOWER_THEN_UPPER
                   ) -> LatticeSearchResult:
    """Find k-anonymous lattice nodes.

    lower_then_upper sweeps the diagram's lower chain first; success
    there carries over to the upper chain by inclusion, so the upper
    sweep is skipped.  A double failure is NOT a proof of infeasibility:
    nodes off both chains remain unexplored, and the result says so.
    exhaustive evaluates every node and returns the minimal k-anonymous
    ones (by level sum, ties lexicographic).
    """
    lattice = build_lattice(trees)
    if strategy == STRATEGY_EXHAUSTIVE:
        good = []
        for node in lattice.nodes():
            classes = generalized_partition_at(rows, trees, node)
            if all(len(c) >= k for c in classes):
                good.append(node)
        if not good:
            return LatticeSearchResult(
                strategy=strategy, nodes=(), reports=(),
                upper_chain_skipped=False, conclusive=True,
                note=f"no lattice node achieves {k}-anonymity")
        best_sum = min(sum(n) for n in good)
        minimal = tuple(sorted(n for n in good if sum(n) == best_sum))
        return LatticeSearchResult(
            strategy=strategy, nodes=minimal, reports=(),
            upper_chain_skipped=False, conclusive=True,
            note="exhaustive search over all lattice nodes")

    if strategy != STRATEGY_LOWER_THEN_UPPER:
        raise ContractViolation(f"unknown strategy {strategy!r}")

    lower = lower_chain(lattice)
    lower_report = chain_sweep(rows, trees, lower, k)
    hit = lower_report.first_anonymous_node
    if hit is not None:
        return LatticeSearchResult(
            strategy=strategy, nodes=(hit,), reports=(lower_report,),
            upper_chain_skipped=True, conclusive=True,
            note="lower chain achieved k-anonymity; upper chain skipped")

    upper = upper_chain(lattice)
    if upper == lower:
        return LatticeSearchResult(
            strategy=strategy, nodes=(), reports=(lower_report,),
            upper_chain_skipped=True, conclusive=True,
            note=f"the single chain never achieves {k}-anonymity")
    upper_report = chain_sweep(rows, trees, upper, k)
    hit = upper_report.first_anonymous_node
    if hit is not None:
        return LatticeSearchResult(
            strategy=strategy, nodes=(hit,),
            reports=(lower_report, upper_report),
            upper_chain_skipped=False, conclusive=True,
            note="upper chain achieved k-anonymity after the lower failed")
    return LatticeSearchResult(
        strategy=strategy, nodes=(),
        reports=(lower_report, upper_report),
        upper_chain_skipped=False, conclusive=False,
        note=("neither chain achieves k-anonymity; this does not prove the "
              "data cannot be k-anonymized, since nodes off both chains "
              "were not evaluated"))


def chain_report_json(report: ChainReport) -> dict:
    return {
        "k": report.k,
        "steps": [
            {
                "levels": list(step.node),
                "n_classes": len(step.classes),
                "k_anonymous": step.k_anonymous,
                "classes": [list(c) for c in step.classes],
            }
            for step in report.steps
        ],
        "h0_bars": [
            {"birth_index": b, "death_index": d,
             "weight_steps": [list(s) for s in steps]}
            for b, d, steps in report.h0_bars
        ],
    }
