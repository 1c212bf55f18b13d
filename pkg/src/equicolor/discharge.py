"""Exact-rational discharging: initial charges, redistribution rules, audits."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import PreconditionViolated
from .graphs import Graph, components, delete_vertices
from .solver import Config, iter_configs
from .threads import Thread, decompose

M4 = "m4"
M3 = "m3"

D0 = {M4: Fraction(5, 2), M3: Fraction(7, 3)}
UNIT = {M4: Fraction(1, 4), M3: Fraction(1, 6)}


@dataclass(frozen=True)
class ChargeLedger:
    d0: Fraction
    initial: dict[int, Fraction]
    final: dict[int, Fraction]
    transfers: tuple[tuple[int, int, Fraction, str], ...] = ()

    def total_initial(self) -> Fraction:
        return sum(self.initial.values(), Fraction(0))

    def total_final(self) -> Fraction:
        return sum(self.final.values(), Fraction(0))


def charges_init(g: Graph, d0: Fraction) -> ChargeLedger:
    """Initial charge d(v) - d0 at every vertex; no transfers yet."""
    init = {v: Fraction(g.degree(v)) - d0 for v in g.vertices}
    return ChargeLedger(d0=d0, initial=init, final=dict(init))


def _split_threads(g: Graph) -> tuple[list[Thread], list[frozenset[int]]]:
    """Thread decomposition per component; pure-cycle components set aside."""
    cycles = []
    branchful: set[int] = set()
    for comp in components(g):
        if all(g.degree(v) == 2 for v in comp):
            cycles.append(comp)
        else:
            branchful |= comp
    if not branchful:
        return [], cycles
    sub = delete_vertices(g, set(g.vertices) - branchful)
    return decompose(sub), cycles


def _bad_vertices(g: Graph, threads: list[Thread], mode: str) -> set[int]:
    incident: dict[int, list[Thread]] = {}
    for th in threads:
        for e in set(th.endpoints):
            incident.setdefault(e, []).append(th)
    bad = set()
    for v, ths in incident.items():
        if g.degree(v) != 3:
            continue
        cnt: dict[int, int] = {}
        for th in ths:
            cnt[th.length] = cnt.get(th.length, 0) + 1
        sig = tuple(cnt.get(k, 0) for k in (4, 2, 1, 0))
        if mode == M3 and sig == (1, 0, 2, 0):
            bad.add(v)
        if mode == M4 and sig[1:] == (1, 2, 0) and cnt.get(4, 0) == 0 and cnt.get(3, 0) == 0:
            bad.add(v)
    return bad


def apply_rules(ledger: ChargeLedger, g: Graph, mode: str) -> ChargeLedger:
    """Redistribute charges: endpoints pay each 2-vertex on their threads, and
    every vertex loosely 1-adjacent to a bad 3-vertex pays the bad vertex."""
    if mode not in (M4, M3):
        raise ValueError(f"mode must be {M4!r} or {M3!r}")
    if g.n and g.min_degree() < 2:
        raise PreconditionViolated("discharging requires min degree >= 2")
    threads, _ = _split_threads(g)
    if any(th.is_cycle for th in threads):
        raise PreconditionViolated("equal-endpoint threads must be reduced before discharging")
    unit = UNIT[mode]
    transfers = list(ledger.transfers)
    final = dict(ledger.final)

    for th in threads:
        for end in th.endpoints:
            for v in th.interior:
                transfers.append((end, v, unit, "R1"))
                final[end] -= unit
                final[v] += unit

    bad = _bad_vertices(g, threads, mode)
    for th in threads:
        if th.length != 1:
            continue
        a, b = th.endpoints
        for sender, receiver in ((a, b), (b, a)):
            if receiver in bad:
                transfers.append((sender, receiver, unit, "R2"))
                final[sender] -= unit
                final[receiver] += unit

    return ChargeLedger(d0=ledger.d0, initial=dict(ledger.initial), final=final,
                        transfers=tuple(transfers))


@dataclass(frozen=True)
class NegativeVertex:
    vertex: int
    charge: Fraction
    witness: Optional[Config]
    falsified: bool

    def to_json(self) -> dict:
        return {
            "vertex": self.vertex,
            "charge": f"{self.charge.numerator}/{self.charge.denominator}",
            "witness": self.witness.to_json() if self.witness else None,
            "falsified": self.falsified,
        }


@dataclass(frozen=True)
class AuditReport:
    mode: str
    d0: Fraction
    total_initial: Fraction
    total_negative: bool
    pure_cycles: tuple[tuple[int, ...], ...]
    negatives: tuple[NegativeVertex, ...]
    conserved: bool

    @property
    def falsified(self) -> bool:
        return any(n.falsified for n in self.negatives)

    def to_json(self) -> dict:
        frac = lambda q: f"{q.numerator}/{q.denominator}"
        return {
            "mode": self.mode,
            "d0": frac(self.d0),
            "total_initial": frac(self.total_initial),
            "total_negative": self.total_negative,
            "conserved": self.conserved,
            "pure_cycles": [list(c) for c in self.pure_cycles],
            "negative_vertices": [n.to_json() for n in self.negatives],
            "falsified": self.falsified,
        }


def _loose_neighborhood(g: Graph, threads: list[Thread], x: int) -> set[int]:
    """x plus every vertex within thread-distance 2 of x (closed loose-1 ball)."""
    ball = {x} | set(g.neighbors(x))
    for th in threads:
        path = [th.endpoints[0], *th.interior, th.endpoints[1]]
        for i, v in enumerate(path):
            if v == x:
                for j in (i - 2, i - 1, i + 1, i + 2):
                    if 0 <= j < len(path):
                        ball.add(path[j])
    return ball


def audit(g: Graph, mode: str) -> AuditReport:
    """Run the discharging argument and certify every deficit locally.

    For each vertex left with negative charge, a reducible configuration must
    exist whose vertex set meets the closed loose-1-neighborhood of the vertex;
    a missing witness is reported as falsified.
    """
    d0 = D0[mode]
    ledger = charges_init(g, d0)
    threads, cycles = _split_threads(g)
    rules_vacuous = not threads
    if not rules_vacuous:
        ledger = apply_rules(ledger, g, mode)
    total = ledger.total_initial()
    conserved = total == ledger.total_final()

    m = 3 if mode == M3 else 4
    cycle_vertices = set().union(*cycles) if cycles else set()
    configs = []
    if threads:
        branchful = delete_vertices(g, cycle_vertices)
        configs = list(iter_configs(branchful, m))
    negatives = []
    for v in sorted(ledger.final):
        if ledger.final[v] >= 0 or v in cycle_vertices:
            # pure-cycle components carry their deficit by design; they are
            # colored directly, not by reduction
            continue
        ball = _loose_neighborhood(g, threads, v)
        witness = None
        for cfg in configs:
            touched = set(cfg.deletion_set)
            for val in cfg.anchors.values():
                if isinstance(val, int):
                    touched.add(val)
                elif isinstance(val, Thread):
                    touched |= val.vertex_set()
            if touched & ball:
                witness = cfg
                break
        negatives.append(NegativeVertex(vertex=v, charge=ledger.final[v],
                                        witness=witness, falsified=witness is None))
    return AuditReport(mode=mode, d0=d0, total_initial=total,
                       total_negative=total < 0,
                       pure_cycles=tuple(tuple(sorted(c)) for c in cycles),
                       negatives=tuple(negatives), conserved=conserved)
