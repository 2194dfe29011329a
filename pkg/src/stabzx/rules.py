"""Local rewrite rules of the stabilizer ZX-calculus.

Each rule comes in a forward and a reverse (``-rev``) direction and in both
colour variants. :func:`find_matches` lists every place a rule applies,
:func:`apply` performs one rewrite. Rules hold up to a nonzero scalar;
:func:`soundness_instances` enumerates a finite family of small instances
covering every rule, direction, colour and phase, which the oracle checks.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Iterator

from .diagram import Builder, Diagram, Node

RULE_NAMES = ("spider", "id", "bialg", "hopf", "copy", "picopy", "picomm", "color", "euler", "hh")


class RuleError(ValueError):
    """Unknown rule, or a match that no longer fits the diagram."""


@dataclass(frozen=True)
class RuleId:
    name: str
    reverse: bool = False

    def __post_init__(self) -> None:
        if self.name not in RULE_NAMES:
            raise RuleError(f"unknown rule {self.name!r}")

    @classmethod
    def parse(cls, text: str) -> RuleId:
        if text.endswith("-rev"):
            return cls(text[:-4], True)
        return cls(text)

    def __str__(self) -> str:
        return self.name + ("-rev" if self.reverse else "")


@dataclass(frozen=True, order=True)
class Match:
    """A rule occurrence: the rule, the node ids it binds and its free parameters."""

    rule: str
    anchors: tuple[int, ...]
    params: tuple = ()

    @property
    def rule_id(self) -> RuleId:
        return RuleId.parse(self.rule)


def _other(kind: str) -> str:
    return "X" if kind == "Z" else "Z"


def _spider(d: Diagram, v: int, kind: str | None = None, phase: int | None = None,
            degree: int | None = None) -> bool:
    n = d.nodes[v]
    return (n.is_spider and (kind is None or n.kind == kind)
            and (phase is None or n.phase == phase)
            and (degree is None or d.degree(v) == degree))


def _has_loop(d: Diagram, v: int) -> bool:
    return d.edge_count(v, v) > 0


def _other_end(d: Diagram, v: int, not_via: int) -> int:
    """Neighbour of a degree-2 node ``v`` other than ``not_via``."""
    nb = list(d.neighbours(v))
    nb.remove(not_via)
    return nb[0]


# spider -------------------------------------------------------------------------------


def _m_spider(d: Diagram) -> Iterator[Match]:
    for u, v in sorted(set(d.edges)):
        if u != v and _spider(d, u) and _spider(d, v) and d.nodes[u].kind == d.nodes[v].kind:
            yield Match("spider", (u, v))


def _r_spider(d: Diagram, b: Builder, m: Match) -> None:
    u, v = m.anchors
    nu, nv = d.nodes[u], d.nodes[v]
    # every leg of v moves onto u, so edges u-v turn into self-loops on u
    legs = [x for x in d.neighbours(v) if x != v]
    b.remove(v)
    for x in legs:
        b.connect(u, x)
    b.nodes[u] = Node(nu.kind, (nu.phase + nv.phase) % 4)
    # a self-loop on a spider is absorbed by the spider law
    while b.edges.get((u, u)):
        b.disconnect(u, u)


def _m_spider_rev(d: Diagram) -> Iterator[Match]:
    for v in d.nodes:
        if _spider(d, v) and not _has_loop(d, v):
            yield Match("spider-rev", (v,), (0, d.degree(v) // 2))


def _r_spider_rev(d: Diagram, b: Builder, m: Match) -> None:
    (v,) = m.anchors
    beta, k = m.params
    n = d.nodes[v]
    w = b.add(Node(n.kind, beta % 4))
    b.nodes[v] = Node(n.kind, (n.phase - beta) % 4)
    for x in d.neighbours(v)[:k]:
        b.disconnect(v, x)
        b.connect(w, x)
    b.connect(v, w)


# identity ---------------------------------------------------------------------------------


def _m_id(d: Diagram) -> Iterator[Match]:
    for v in d.nodes:
        if _spider(d, v, phase=0, degree=2) and not _has_loop(d, v):
            yield Match("id", (v,))


def _r_id(d: Diagram, b: Builder, m: Match) -> None:
    (v,) = m.anchors
    x, y = d.neighbours(v)
    b.remove(v)
    b.connect(x, y)


def _m_id_rev(d: Diagram) -> Iterator[Match]:
    for u, w in sorted(set(d.edges)):
        yield Match("id-rev", (u, w), ("Z",))


def _r_id_rev(d: Diagram, b: Builder, m: Match) -> None:
    u, w = m.anchors
    (kind,) = m.params
    b.disconnect(u, w)
    s = b.add(Node(kind, 0))
    b.connect(u, s)
    b.connect(s, w)


# bialgebra -------------------------------------------------------------------------------


def _m_bialg(d: Diagram) -> Iterator[Match]:
    cand = [v for v in d.nodes if _spider(d, v, phase=0, degree=3) and not _has_loop(d, v)]
    for z1 in cand:
        kz = d.nodes[z1].kind
        xs = sorted({x for x in d.neighbours(z1) if x in cand and d.nodes[x].kind != kz})
        for i, x1 in enumerate(xs):
            for x2 in xs[i + 1:]:
                for z2 in cand:
                    if z2 <= z1 or d.nodes[z2].kind != kz:
                        continue
                    four = (z1, z2, x1, x2)
                    if all(d.edge_count(z, x) == 1 for z in (z1, z2) for x in (x1, x2)):
                        ext = [_third(d, v, four) for v in four]
                        if all(e is not None for e in ext):
                            yield Match("bialg", four)


def _third(d: Diagram, v: int, four: tuple[int, ...]) -> int | None:
    rest = [x for x in d.neighbours(v) if x not in four]
    return rest[0] if len(rest) == 1 else None


def _r_bialg(d: Diagram, b: Builder, m: Match) -> None:
    z1, z2, x1, x2 = m.anchors
    kz, kx = d.nodes[z1].kind, d.nodes[x1].kind
    t = [_third(d, z, m.anchors) for z in (z1, z2)]
    s = [_third(d, x, m.anchors) for x in (x1, x2)]
    for v in m.anchors:
        b.remove(v)
    top = b.add(Node(kx, 0))
    bottom = b.add(Node(kz, 0))
    for x in t:
        b.connect(top, x)
    for x in s:
        b.connect(bottom, x)
    b.connect(top, bottom)


def _m_bialg_rev(d: Diagram) -> Iterator[Match]:
    for a, c in sorted(set(d.edges)):
        for top, bottom in ((a, c), (c, a)):
            if top == bottom or not (_spider(d, top, phase=0, degree=3) and _spider(d, bottom, phase=0, degree=3)):
                continue
            if d.nodes[top].kind == d.nodes[bottom].kind or d.edge_count(top, bottom) != 1:
                continue
            if _has_loop(d, top) or _has_loop(d, bottom):
                continue
            yield Match("bialg-rev", (top, bottom))


def _r_bialg_rev(d: Diagram, b: Builder, m: Match) -> None:
    top, bottom = m.anchors
    kx, kz = d.nodes[top].kind, d.nodes[bottom].kind
    t = [x for x in d.neighbours(top) if x != bottom]
    s = [x for x in d.neighbours(bottom) if x != top]
    b.remove(top)
    b.remove(bottom)
    zs = [b.add(Node(kz, 0)) for _ in range(2)]
    xs = [b.add(Node(kx, 0)) for _ in range(2)]
    for z, x in zip(zs, t):
        b.connect(z, x)
    for x, y in zip(xs, s):
        b.connect(x, y)
    for z in zs:
        for x in xs:
            b.connect(z, x)


# Hopf ---------------------------------------------------------------------------------------


def _m_hopf(d: Diagram) -> Iterator[Match]:
    for u, v in sorted(set(d.edges)):
        if (u != v and _spider(d, u) and _spider(d, v)
                and d.nodes[u].kind != d.nodes[v].kind and d.edge_count(u, v) == 2):
            yield Match("hopf", (u, v))


def _r_hopf(d: Diagram, b: Builder, m: Match) -> None:
    u, v = m.anchors
    b.disconnect(u, v, 2)


def _m_hopf_rev(d: Diagram) -> Iterator[Match]:
    sp = [v for v in d.nodes if _spider(d, v)]
    for i, u in enumerate(sp):
        for v in sp[i + 1:]:
            if d.nodes[u].kind != d.nodes[v].kind and d.edge_count(u, v) == 0:
                yield Match("hopf-rev", (u, v))


def _r_hopf_rev(d: Diagram, b: Builder, m: Match) -> None:
    u, v = m.anchors
    b.connect(u, v, 2)


# copy ----------------------------------------------------------------------------------------


def _m_copy(d: Diagram) -> Iterator[Match]:
    for s in d.nodes:
        if not _spider(d, s, phase=0, degree=1) or _has_loop(d, s):
            continue
        (c,) = d.neighbours(s)
        if (c != s and _spider(d, c, kind=_other(d.nodes[s].kind), phase=0)
                and d.degree(c) >= 2 and not _has_loop(d, c)):
            yield Match("copy", (s, c))


def _r_copy(d: Diagram, b: Builder, m: Match) -> None:
    s, c = m.anchors
    kind = d.nodes[s].kind
    rest = [x for x in d.neighbours(c) if x != s]
    b.remove(s)
    b.remove(c)
    for x in rest:
        b.connect(x, b.add(Node(kind, 0)))


def _m_copy_rev(d: Diagram) -> Iterator[Match]:
    states = [v for v in d.nodes if _spider(d, v, phase=0, degree=1) and not _has_loop(d, v)]
    for i, s1 in enumerate(states):
        for s2 in states[i + 1:]:
            if d.nodes[s1].kind == d.nodes[s2].kind and d.edge_count(s1, s2) == 0:
                yield Match("copy-rev", (s1, s2))


def _r_copy_rev(d: Diagram, b: Builder, m: Match) -> None:
    s1, s2 = m.anchors
    kind = d.nodes[s1].kind
    (n1,), (n2,) = d.neighbours(s1), d.neighbours(s2)
    b.remove(s1)
    b.remove(s2)
    c = b.add(Node(_other(kind), 0))
    b.connect(c, n1)
    b.connect(c, n2)
    b.connect(c, b.add(Node(kind, 0)))


# pi-copy -------------------------------------------------------------------------------------


def _pi_node(d: Diagram, p: int, host: int) -> bool:
    """``p`` is a degree-2 pi spider of the other colour hanging once off ``host``."""
    return (p != host and _spider(d, p, kind=_other(d.nodes[host].kind), phase=2, degree=2)
            and d.edge_count(p, host) == 1 and not _has_loop(d, p))


def _m_picopy(d: Diagram) -> Iterator[Match]:
    for p in d.nodes:
        if not _spider(d, p, phase=2, degree=2) or _has_loop(d, p):
            continue
        for c in sorted(set(d.neighbours(p))):
            if _spider(d, c) and _pi_node(d, p, c) and not _has_loop(d, c):
                yield Match("picopy", (p, c))


def _r_picopy(d: Diagram, b: Builder, m: Match) -> None:
    p, c = m.anchors
    pk = d.nodes[p].kind
    o = _other_end(d, p, c)
    legs = list(d.neighbours(c))
    legs.remove(p)
    b.remove(p)
    for x in legs:
        b.disconnect(c, x)
        q = b.add(Node(pk, 2))
        b.connect(c, q)
        b.connect(q, x)
    b.connect(o, c)
    nc = d.nodes[c]
    b.nodes[c] = Node(nc.kind, (-nc.phase) % 4)


def _m_picopy_rev(d: Diagram) -> Iterator[Match]:
    for c in d.nodes:
        if not _spider(d, c) or _has_loop(d, c) or d.degree(c) == 0:
            continue
        nb = d.neighbours(c)
        for i, free in enumerate(nb):
            if i and nb[i - 1] == free:
                continue
            rest = nb[:i] + nb[i + 1:]
            if len(set(rest)) == len(rest) and all(_pi_node(d, p, c) for p in rest):
                yield Match("picopy-rev", (c, free) + tuple(rest))


def _r_picopy_rev(d: Diagram, b: Builder, m: Match) -> None:
    c, free, *pis = m.anchors
    kind = _other(d.nodes[c].kind)
    for p in pis:
        o = _other_end(d, p, c)
        b.remove(p)
        b.connect(c, o)
    b.disconnect(c, free)
    q = b.add(Node(kind, 2))
    b.connect(c, q)
    b.connect(q, free)
    nc = d.nodes[c]
    b.nodes[c] = Node(nc.kind, (-nc.phase) % 4)


# pi-commutation ---------------------------------------------------------------------------------


def _m_picomm(d: Diagram, name: str = "picomm") -> Iterator[Match]:
    for p in d.nodes:
        if not _spider(d, p, phase=2, degree=2) or _has_loop(d, p):
            continue
        for g in sorted(set(d.neighbours(p))):
            if (g != p and _spider(d, g, kind=_other(d.nodes[p].kind), degree=2)
                    and d.edge_count(p, g) == 1 and not _has_loop(d, g)):
                yield Match(name, (p, g))


def _r_picomm(d: Diagram, b: Builder, m: Match) -> None:
    p, g = m.anchors
    a = _other_end(d, p, g)
    c = _other_end(d, g, p)
    b.disconnect(p, a)
    b.disconnect(g, c)
    b.connect(a, g)
    b.connect(p, c)
    ng = d.nodes[g]
    b.nodes[g] = Node(ng.kind, (-ng.phase) % 4)


# colour change ---------------------------------------------------------------------------------


def _m_color(d: Diagram) -> Iterator[Match]:
    for v in d.nodes:
        if not _spider(d, v) or d.degree(v) == 0 or _has_loop(d, v):
            continue
        nb = d.neighbours(v)
        if len(set(nb)) == len(nb) and all(d.nodes[h].kind == "H" and d.edge_count(h, v) == 1 for h in nb):
            yield Match("color", (v,))


def _r_color(d: Diagram, b: Builder, m: Match) -> None:
    (v,) = m.anchors
    for h in d.neighbours(v):
        o = _other_end(d, h, v)
        b.remove(h)
        b.connect(v, o)
    n = d.nodes[v]
    b.nodes[v] = Node(_other(n.kind), n.phase)


def _m_color_rev(d: Diagram) -> Iterator[Match]:
    for v in d.nodes:
        if _spider(d, v) and not _has_loop(d, v):
            yield Match("color-rev", (v,))


def _r_color_rev(d: Diagram, b: Builder, m: Match) -> None:
    (v,) = m.anchors
    for x in d.neighbours(v):
        b.disconnect(v, x)
        h = b.add(Node.h())
        b.connect(v, h)
        b.connect(h, x)
    n = d.nodes[v]
    b.nodes[v] = Node(_other(n.kind), n.phase)


# Euler decomposition of H ----------------------------------------------------------------------


def _m_euler(d: Diagram) -> Iterator[Match]:
    for h in d.nodes:
        if d.nodes[h].kind == "H" and not _has_loop(d, h):
            yield Match("euler", (h,), ("Z",))


def _r_euler(d: Diagram, b: Builder, m: Match) -> None:
    (h,) = m.anchors
    (outer,) = m.params
    x, y = d.neighbours(h)
    b.remove(h)
    chain = [b.add(Node(k, 1)) for k in (outer, _other(outer), outer)]
    b.connect(x, chain[0])
    b.connect(chain[0], chain[1])
    b.connect(chain[1], chain[2])
    b.connect(chain[2], y)


def _m_euler_rev(d: Diagram) -> Iterator[Match]:
    for a in d.nodes:
        if not _spider(d, a, phase=1, degree=2) or _has_loop(d, a):
            continue
        k = d.nodes[a].kind
        for mid in sorted(set(d.neighbours(a))):
            if not (_spider(d, mid, kind=_other(k), phase=1, degree=2) and d.edge_count(a, mid) == 1):
                continue
            c = _other_end(d, mid, a)
            if c in (a, mid) or not _spider(d, c, kind=k, phase=1, degree=2) or d.edge_count(mid, c) != 1:
                continue
            if a < c:
                yield Match("euler-rev", (a, mid, c))


def _r_euler_rev(d: Diagram, b: Builder, m: Match) -> None:
    a, mid, c = m.anchors
    x = _other_end(d, a, mid)
    y = _other_end(d, c, mid)
    for v in m.anchors:
        b.remove(v)
    h = b.add(Node.h())
    b.connect(x, h)
    b.connect(h, y)


# Hadamard self-inverse -----------------------------------------------------------------------------


def _m_hh(d: Diagram) -> Iterator[Match]:
    for u, v in sorted(set(d.edges)):
        if (u != v and d.nodes[u].kind == "H" and d.nodes[v].kind == "H"
                and d.edge_count(u, v) == 1):
            yield Match("hh", (u, v))


def _r_hh(d: Diagram, b: Builder, m: Match) -> None:
    u, v = m.anchors
    x = _other_end(d, u, v)
    y = _other_end(d, v, u)
    b.remove(u)
    b.remove(v)
    b.connect(x, y)


def _m_hh_rev(d: Diagram) -> Iterator[Match]:
    for u, w in sorted(set(d.edges)):
        yield Match("hh-rev", (u, w))


def _r_hh_rev(d: Diagram, b: Builder, m: Match) -> None:
    u, w = m.anchors
    b.disconnect(u, w)
    h1, h2 = b.add(Node.h()), b.add(Node.h())
    b.connect(u, h1)
    b.connect(h1, h2)
    b.connect(h2, w)


_Finder = Callable[[Diagram], Iterator[Match]]
_Rewriter = Callable[[Diagram, Builder, Match], None]

_TABLE: dict[str, tuple[_Finder, _Rewriter]] = {
    "spider": (_m_spider, _r_spider),
    "spider-rev": (_m_spider_rev, _r_spider_rev),
    "id": (_m_id, _r_id),
    "id-rev": (_m_id_rev, _r_id_rev),
    "bialg": (_m_bialg, _r_bialg),
    "bialg-rev": (_m_bialg_rev, _r_bialg_rev),
    "hopf": (_m_hopf, _r_hopf),
    "hopf-rev": (_m_hopf_rev, _r_hopf_rev),
    "copy": (_m_copy, _r_copy),
    "copy-rev": (_m_copy_rev, _r_copy_rev),
    "picopy": (_m_picopy, _r_picopy),
    "picopy-rev": (_m_picopy_rev, _r_picopy_rev),
    "picomm": (_m_picomm, _r_picomm),
    "picomm-rev": (lambda d: _m_picomm(d, "picomm-rev"), _r_picomm),
    "color": (_m_color, _r_color),
    "color-rev": (_m_color_rev, _r_color_rev),
    "euler": (_m_euler, _r_euler),
    "euler-rev": (_m_euler_rev, _r_euler_rev),
    "hh": (_m_hh, _r_hh),
    "hh-rev": (_m_hh_rev, _r_hh_rev),
}


def find_matches(d: Diagram, rule: RuleId | str) -> list[Match]:
    """Every occurrence of ``rule`` in ``d``, sorted by anchor ids."""
    key = str(rule if isinstance(rule, RuleId) else RuleId.parse(rule))
    finder, _ = _TABLE[key]
    return sorted(set(finder(d)))


def apply(d: Diagram, m: Match) -> Diagram:
    """Rewrite ``d`` at ``m``; parameters of ``m`` may differ from the finder's defaults."""
    key = str(m.rule_id)
    finder, rewrite = _TABLE[key]
    if not any(x.anchors == m.anchors for x in finder(d)):
        raise RuleError(f"stale match {m.rule} at {m.anchors}")
    b = d.builder()
    rewrite(d, b, m)
    return b.build()


def with_params(m: Match, *params) -> Match:
    return replace(m, params=tuple(params))


# zero scalars ---------------------------------------------------------------------------------------


def zero_scalar_nodes(d: Diagram) -> list[int]:
    """Legless spiders with phase pi, each of which is a global factor of zero."""
    return [v for v in d.nodes if _spider(d, v, phase=2, degree=0)]


def has_zero_scalar(d: Diagram) -> bool:
    return bool(zero_scalar_nodes(d))


# finite soundness suite -------------------------------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    label: str
    lhs: Diagram
    match: Match


class _Pattern:
    """Scratch builder that numbers output boundaries as they are attached."""

    def __init__(self) -> None:
        self.b = Builder()
        self.outs = 0

    def node(self, kind: str, phase: int | None = None) -> int:
        if kind == "H":
            return self.b.add(Node.h())
        return self.b.add(Node(kind, phase % 4))

    def leg(self, v: int, count: int = 1) -> None:
        for _ in range(count):
            o = self.b.add(Node.out(self.outs))
            self.outs += 1
            self.b.connect(v, o)

    def edge(self, u: int, v: int, times: int = 1) -> None:
        self.b.connect(u, v, times)

    def build(self) -> Diagram:
        return self.b.build()


def _only(d: Diagram, rule: str, anchors: tuple[int, ...] | None = None) -> Match:
    ms = find_matches(d, rule)
    if anchors is not None:
        ms = [m for m in ms if m.anchors == anchors]
    if not ms:
        raise AssertionError(f"pattern for {rule} does not match")
    return ms[0]


def soundness_instances() -> list[Instance]:
    """Small diagrams exercising every rule, direction, colour and phase."""
    out: list[Instance] = []
    ks = ("Z", "X")
    P = range(4)

    def add(label: str, d: Diagram, m: Match) -> None:
        out.append(Instance(label, d, m))

    for k in ks:
        for a in P:
            for c in P:
                for mult in (1, 2):
                    p = _Pattern()
                    u, v = p.node(k, a), p.node(k, c)
                    p.edge(u, v, mult)
                    p.leg(u, 2)
                    p.leg(v)
                    d = p.build()
                    add(f"spider {k} {a} {c} x{mult}", d, _only(d, "spider"))
                # unfuse the phase-a spider, splitting off phase c
                p = _Pattern()
                v = p.node(k, a)
                p.leg(v, 3)
                d = p.build()
                add(f"spider-rev {k} {a} {c}", d, with_params(_only(d, "spider-rev"), c, 1))
        p = _Pattern()
        v = p.node(k, 0)
        p.leg(v, 2)
        d = p.build()
        add(f"id {k}", d, _only(d, "id"))
        for a in P:
            p = _Pattern()
            v = p.node(_other(k), a)
            p.leg(v, 2)
            d = p.build()
            m = _only(d, "id-rev")
            add(f"id-rev {k} {a}", d, with_params(m, k))
        # bialgebra
        p = _Pattern()
        z1, z2 = p.node(k, 0), p.node(k, 0)
        x1, x2 = p.node(_other(k), 0), p.node(_other(k), 0)
        for z in (z1, z2):
            for x in (x1, x2):
                p.edge(z, x)
        for v in (z1, z2, x1, x2):
            p.leg(v)
        d = p.build()
        add(f"bialg {k}", d, _only(d, "bialg"))
        p = _Pattern()
        top, bottom = p.node(_other(k), 0), p.node(k, 0)
        p.edge(top, bottom)
        p.leg(top, 2)
        p.leg(bottom, 2)
        d = p.build()
        add(f"bialg-rev {k}", d, _only(d, "bialg-rev", (top, bottom)))
        # copy
        for arity in (2, 3):
            p = _Pattern()
            s, c = p.node(_other(k), 0), p.node(k, 0)
            p.edge(s, c)
            p.leg(c, arity)
            d = p.build()
            add(f"copy {k} {arity}", d, _only(d, "copy"))
        p = _Pattern()
        s1, s2 = p.node(_other(k), 0), p.node(_other(k), 0)
        g = p.node(k, 0)
        for s in (s1, s2):
            q = p.node(k, 1)
            p.edge(s, q)
            p.edge(q, g)
        p.leg(g)
        d = p.build()
        add(f"copy-rev {k}", d, _only(d, "copy-rev", (s1, s2)))
        # pi-copy, pi-commutation, colour change
        for a in P:
            for arity in (1, 2, 3):
                p = _Pattern()
                pi, c = p.node(_other(k), 2), p.node(k, a)
                p.edge(pi, c)
                p.leg(pi)
                p.leg(c, arity - 1)
                d = p.build()
                add(f"picopy {k} {a} {arity}", d, _only(d, "picopy", (pi, c)))
            p = _Pattern()
            c = p.node(k, a)
            p.leg(c)
            for _ in range(2):
                q = p.node(_other(k), 2)
                p.edge(c, q)
                p.leg(q)
            d = p.build()
            free = d.neighbours(c)[0]
            ms = [m for m in find_matches(d, "picopy-rev") if m.anchors[:2] == (c, free)]
            add(f"picopy-rev {k} {a}", d, ms[0])
            for name in ("picomm", "picomm-rev"):
                p = _Pattern()
                pi, g = p.node(_other(k), 2), p.node(k, a)
                p.edge(pi, g)
                p.leg(pi)
                p.leg(g)
                d = p.build()
                add(f"{name} {k} {a}", d, _only(d, name, (pi, g)))
            p = _Pattern()
            v = p.node(k, a)
            for _ in range(3):
                h = p.node("H")
                p.edge(v, h)
                p.leg(h)
            d = p.build()
            add(f"color {k} {a}", d, _only(d, "color", (v,)))
            p = _Pattern()
            v = p.node(k, a)
            p.leg(v, 3)
            d = p.build()
            add(f"color-rev {k} {a}", d, _only(d, "color-rev", (v,)))
        # Euler decomposition
        p = _Pattern()
        h = p.node("H")
        p.leg(h, 2)
        d = p.build()
        add(f"euler {k}", d, with_params(_only(d, "euler"), k))
        p = _Pattern()
        chain = [p.node(q, 1) for q in (k, _other(k), k)]
        p.edge(chain[0], chain[1])
        p.edge(chain[1], chain[2])
        p.leg(chain[0])
        p.leg(chain[2])
        d = p.build()
        add(f"euler-rev {k}", d, _only(d, "euler-rev"))
    # Hopf (colour symmetric); with and without extra legs
    for a in P:
        for c in P:
            for legs in (0, 1):
                p = _Pattern()
                u, v = p.node("Z", a), p.node("X", c)
                p.edge(u, v, 2)
                p.leg(u, legs)
                p.leg(v, legs)
                d = p.build()
                add(f"hopf {a} {c} {legs}", d, _only(d, "hopf"))
            p = _Pattern()
            u, v = p.node("Z", a), p.node("X", c)
            p.leg(u)
            p.leg(v)
            d = p.build()
            add(f"hopf-rev {a} {c}", d, _only(d, "hopf-rev"))
    # H self-inverse
    p = _Pattern()
    h1, h2 = p.node("H"), p.node("H")
    p.edge(h1, h2)
    p.leg(h1)
    p.leg(h2)
    d = p.build()
    add("hh", d, _only(d, "hh"))
    p = _Pattern()
    v = p.node("Z", 1)
    p.leg(v, 2)
    d = p.build()
    add("hh-rev", d, find_matches(d, "hh-rev")[0])
    return out


def check_soundness(interpret, scalar_equal) -> tuple[int, list[str]]:
    """Run every instance through the oracle; returns ``(count, failed labels)``."""
    failed = []
    insts = soundness_instances()
    for inst in insts:
        rhs = apply(inst.lhs, inst.match)
        if not scalar_equal(interpret(inst.lhs), interpret(rhs)):
            failed.append(inst.label)
    return len(insts), failed
