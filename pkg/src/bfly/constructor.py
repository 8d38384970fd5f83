"""Construction of the begin/end graph pair with equal degrees and butterfly counts.

Node ``x_i`` is left id ``i - 1`` and ``y_j`` is right id ``j - 1``; the
loops below keep the 1-based indices of the pseudocode so each block can be
read against it line by line.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .canon import are_isomorphic
from .errors import InvalidParams
from .graph import (
    BipartiteGraph,
    butterflies_pair,
    butterfly_count,
    choose2,
    degree_sequences,
    shared_neighbors,
)


@dataclass(frozen=True)
class ConstructionPair:
    s: int
    t: int
    n: int
    add: int
    g_begin: BipartiteGraph
    g_end: BipartiteGraph

    @property
    def butterflies(self) -> int:
        return self.n + choose2(self.n)


def padding_count(s: int, t: int) -> int:
    return s + t - 2 + (s % 2 == 0) + (t % 2 == 0)


def construct_pair(s: int, t: int) -> ConstructionPair:
    if s < 2 or t < 2 or s == t:
        raise InvalidParams(f"need s != t and both >= 2, got s={s}, t={t}")
    n = choose2(s) + choose2(t)
    add = padding_count(s, t)
    nl, nr = 7 + add, s + t + n + 2 + add

    def e(i, j):
        return (i - 1, j - 1)

    eb = set()
    for l in range(1, s + 1):
        eb |= {e(1, l), e(2, l)}
    for l in range(1, t + 1):
        eb |= {e(3, s + l), e(4, s + l)}
    for l in range(1, n + 1):
        eb |= {e(5, s + t + l), e(6, s + t + l)}
    eb |= {e(5, s + t + n + 1), e(6, s + t + n + 2), e(7, s + t + n + 1)}
    for l in range(1, add + 1):
        eb.add(e(7 + l, s + t + n + 2 + l))

    ee = set()
    for l in range(1, n + 2):
        ee |= {e(5, s + t + l), e(6, s + t + l)}
    ee |= {e(1, 1), e(2, 1), e(3, s + 1), e(4, s + 1)}
    h1, h2 = (s - 1) // 2, (t - 1) // 2
    for l in range(1, h1 + 1):
        ee |= {e(1, 1 + l), e(2, 1 + h1 + l)}
    for l in range(1, h2 + 1):
        ee |= {e(3, s + 1 + l), e(4, s + 1 + h2 + l)}
    a1, a2 = s - (1 + h1), t - (1 + h2)
    base = s + t + n + 2
    for l in range(1, a1 + 1):
        ee |= {e(1, base + l), e(2, base + a1 + l)}
    for l in range(1, a2 + 1):
        ee |= {e(3, base + 2 * a1 + l), e(4, base + 2 * a1 + a2 + l)}
    ee.add(e(7, s + t + n + 2))
    for l in range(1, s):
        ee.add(e(7 + l, 1 + l))
    for l in range(1, t):
        ee.add(e(7 + s - 1 + l, s + 1 + l))
    extra = 0
    if s % 2 == 0:
        ee.add(e(7 + s + t - 1, s))
        extra += 1
    if t % 2 == 0:
        ee.add(e(7 + s + t - 1 + extra, s + t))

    return ConstructionPair(
        s, t, n, add,
        BipartiteGraph(nl, nr, frozenset(eb)),
        BipartiteGraph(nl, nr, frozenset(ee)),
    )


def min_qbar_for(s: int) -> int:
    """Lower bound 2(s-1) on the largest swap in any sequence joining the pair.

    ``s`` plays the role of the larger of the two construction parameters.
    """
    if s < 2:
        raise InvalidParams(f"s must be >= 2, got {s}")
    return 2 * (s - 1)


@dataclass
class PropertyReport:
    s: int
    t: int
    n: int
    checks: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, c in self.checks.items() if not c["passed"]]

    def to_json(self) -> dict:
        return {"s": self.s, "t": self.t, "n": self.n, "passed": self.passed,
                "checks": self.checks, "notes": self.notes}


def _check(report, name, passed, **detail):
    report.checks[name] = {"passed": bool(passed), **detail}


def verify_construction(cp: ConstructionPair) -> PropertyReport:
    s, t, n = cp.s, cp.t, cp.n
    gb, ge = cp.g_begin, cp.g_end
    rep = PropertyReport(s, t, n)
    add = padding_count(s, t)
    a_text = (s + 1) % 2 + (t + 1) % 2

    want_l, want_r = 7 + add, s + t + n + 2 + add
    _check(rep, "P1_node_counts",
           all(g.left_count == want_l and g.right_count == want_r for g in (gb, ge)),
           left=[gb.left_count, ge.left_count], right=[gb.right_count, ge.right_count],
           expected=[want_l, want_r])
    rep.notes["main_text_node_counts"] = [7 + a_text, s + t + n + 2 + a_text]

    left_want = [s, s, t, t, n + 1, n + 1] + [1] * (want_l - 6)
    right_want = [2] * (s + t + n + 1) + [1] * (want_r - (s + t + n + 1))
    db, de = degree_sequences(gb), degree_sequences(ge)
    _check(rep, "P2_degrees",
           db == de and list(db.left_degrees) == left_want and list(db.right_degrees) == right_want,
           begin=db.to_json(), end=de.to_json())

    target = n + choose2(n)
    bb, be = butterfly_count(gb), butterfly_count(ge)
    _check(rep, "P3_butterflies", bb == be == target, begin=bb, end=be, expected=target)

    x = lambda i: i - 1  # noqa: E731
    sh_e = shared_neighbors(ge, x(5), x(6))
    pair_e = butterflies_pair(ge, x(5), x(6))
    _check(rep, "P4_end_hub_pair", sh_e == n + 1 and pair_e == be,
           shared_x5_x6=sh_e, butterflies_x5_x6=pair_e)

    sh = {
        "x5_x6": shared_neighbors(gb, x(5), x(6)),
        "x1_x2": shared_neighbors(gb, x(1), x(2)),
        "x3_x4": shared_neighbors(gb, x(3), x(4)),
    }
    _check(rep, "P5_begin_three_pairs",
           sh == {"x5_x6": n, "x1_x2": s, "x3_x4": t} and butterflies_pair(gb, x(5), x(6)) < bb,
           shared=sh)

    _check(rep, "non_isomorphic", not are_isomorphic(gb, ge))
    return rep
