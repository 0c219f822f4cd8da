"""Planar marked-graph diagrams and their 3-page encodings.

A :class:`PlanarMarkedDiagram` is a 4-valent plane graph given by a rotation
system: every vertex lists its four edge slots counterclockwise.  Crossing
vertices name the two opposite slots of the over strand; singular vertices
name the two opposite corners joined by the bridge, where corner ``k`` is
the region between slots ``k`` and ``k+1``.  A bridge ``[k, k+2]`` lies along
the positive smoothing, which joins slots ``k+1, k+2`` and ``k+3, k``.

:func:`encode_diagram` turns a diagram into a word.  A closed path ``alpha``
through a point at infinity is drawn on the sphere; it runs along the over
strand of every crossing and along every bridge, and meets the rest of the
diagram transversally.  Straightening ``alpha`` into the binding axis puts
the diagram into ``P0`` (left of ``alpha``) and ``P2`` (right of it), with
the over strands lifted into ``P1``.  Reading the arc ends at the axis
points gives the letters.

:func:`project_word` goes the other way, from a word to its diagram.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .pages import (
    Crossing,
    DecodeError,
    End,
    LinkDiagram,
    _cycles,
    _mates,
    decode,
    letter_for_ends,
    to_link_diagram,
)
from .word import Letter, Word, as_word

MAX_ALPHA_ATTEMPTS = 256


class DiagramError(ValueError):
    """The input is not a valid planar marked diagram."""


class EncodeError(RuntimeError):
    """No admissible path ``alpha`` was found."""


@dataclass
class DiagramVertex:
    id: int
    type: str  # "crossing" | "singular"
    rotation: list[int]
    over: Optional[tuple[int, int]] = None
    bridge: Optional[tuple[int, int]] = None


@dataclass
class DiagramEdge:
    id: int
    ends: list[tuple[int, int]]  # [] for a vertex-free circle


def _opposite_pair(pair, what: str, vid) -> tuple[int, int]:
    if pair is None or len(pair) != 2:
        raise DiagramError(f"vertex {vid}: {what} needs two slot indices")
    s, t = (int(pair[0]) % 4, int(pair[1]) % 4)
    if (t - s) % 4 != 2:
        raise DiagramError(f"vertex {vid}: {what} slots {list(pair)} are not opposite")
    return (min(s, t), max(s, t))


@dataclass
class PlanarMarkedDiagram:
    vertices: list[DiagramVertex]
    edges: list[DiagramEdge]
    _vidx: dict = field(default_factory=dict, repr=False, compare=False)
    _eidx: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._vidx = {v.id: v for v in self.vertices}
        self._eidx = {e.id: e for e in self.edges}

    # -- I/O ---------------------------------------------------------------

    @classmethod
    def from_dict(cls, doc: dict) -> "PlanarMarkedDiagram":
        try:
            vertices = []
            for v in doc.get("vertices", []):
                kind = v["type"]
                if kind not in ("crossing", "singular"):
                    raise DiagramError(f"vertex {v.get('id')}: unknown type {kind!r}")
                vertices.append(
                    DiagramVertex(
                        int(v["id"]),
                        kind,
                        [int(e) for e in v["rotation"]],
                        tuple(v["over"]) if kind == "crossing" else None,
                        tuple(v["bridge"]) if kind == "singular" else None,
                    )
                )
            edges = [
                DiagramEdge(int(e["id"]), [(int(a), int(b)) for a, b in e.get("ends", [])])
                for e in doc.get("edges", [])
            ]
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DiagramError):
                raise
            raise DiagramError(f"malformed diagram document: {exc}") from exc
        d = cls(vertices, edges)
        d.validate()
        return d

    @classmethod
    def from_json(cls, text: str) -> "PlanarMarkedDiagram":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DiagramError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(doc)

    def to_dict(self) -> dict:
        verts = []
        for v in sorted(self.vertices, key=lambda v: v.id):
            item = {"id": v.id, "type": v.type, "rotation": list(v.rotation)}
            if v.type == "crossing":
                item["over"] = list(v.over)
            else:
                item["bridge"] = list(v.bridge)
            verts.append(item)
        edges = [
            {"id": e.id, "ends": [list(x) for x in e.ends]}
            for e in sorted(self.edges, key=lambda e: e.id)
        ]
        return {"vertices": verts, "edges": edges}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_pd(cls, pd, singular=()) -> "PlanarMarkedDiagram":
        """Build a diagram from planar-diagram code.

        Each entry lists four edge labels counterclockwise starting from an
        under strand, as in ``X[i, j, k, l]``.  Entries whose position is in
        ``singular`` become singular vertices instead; their bridge joins
        corners 0 and 2.  A label used twice by one entry is a small kink.
        """
        singular = set(singular)
        vertices, ends = [], {}
        for vid, labels in enumerate(pd):
            if len(labels) != 4:
                raise DiagramError(f"PD entry {vid} does not have four labels")
            if vid in singular:
                vertices.append(DiagramVertex(vid, "singular", list(labels), bridge=(0, 2)))
            else:
                vertices.append(DiagramVertex(vid, "crossing", list(labels), over=(1, 3)))
            for slot, lab in enumerate(labels):
                ends.setdefault(lab, []).append((vid, slot))
        edges = [DiagramEdge(lab, ends[lab]) for lab in sorted(ends)]
        d = cls(vertices, edges)
        d.validate()
        return d

    # -- structure ---------------------------------------------------------

    def validate(self) -> None:
        seen = {}
        if len(self._vidx) != len(self.vertices) or len(self._eidx) != len(self.edges):
            raise DiagramError("duplicate vertex or edge ids")
        for v in self.vertices:
            if len(v.rotation) != 4:
                raise DiagramError(f"vertex {v.id} is not 4-valent")
            if v.type == "crossing":
                v.over = _opposite_pair(v.over, "over", v.id)
            else:
                v.bridge = _opposite_pair(v.bridge, "bridge", v.id)
        for e in self.edges:
            if len(e.ends) not in (0, 2):
                raise DiagramError(f"edge {e.id} must have 0 or 2 ends")
            for vid, slot in e.ends:
                v = self._vidx.get(vid)
                if v is None or not 0 <= slot < 4:
                    raise DiagramError(f"edge {e.id} ends at unknown slot ({vid}, {slot})")
                if v.rotation[slot] != e.id:
                    raise DiagramError(
                        f"edge {e.id} ends at ({vid}, {slot}) but the rotation there lists {v.rotation[slot]}"
                    )
                if (vid, slot) in seen:
                    raise DiagramError(f"slot ({vid}, {slot}) is used twice")
                seen[(vid, slot)] = e.id
        for v in self.vertices:
            for slot in range(4):
                if (v.id, slot) not in seen:
                    raise DiagramError(f"slot ({v.id}, {slot}) has no edge")
        # every connected piece of a planar rotation system has V - E + F = 2
        for comp in self._graph_components():
            vs, es = comp
            faces = _count_faces(self, vs)
            if len(vs) - len(es) + faces != 2:
                raise DiagramError(
                    f"rotation system of the piece containing vertex {min(vs)} is not planar "
                    f"(V - E + F = {len(vs) - len(es) + faces})"
                )

    def _other_end(self, vid: int, slot: int) -> tuple[int, int]:
        e = self._eidx[self._vidx[vid].rotation[slot]]
        a, b = e.ends
        if a == (vid, slot):
            return b
        return a

    def _graph_components(self) -> list[tuple[set, set]]:
        seen = set()
        out = []
        for v in sorted(self._vidx):
            if v in seen:
                continue
            vs, es = {v}, set()
            todo = [v]
            while todo:
                u = todo.pop()
                for e in self._vidx[u].rotation:
                    es.add(e)
                    for w, _ in self._eidx[e].ends:
                        if w not in vs:
                            vs.add(w)
                            todo.append(w)
            seen |= vs
            out.append((vs, es))
        return out

    @property
    def crossing_count(self) -> int:
        return sum(1 for v in self.vertices if v.type == "crossing")

    @property
    def singular_count(self) -> int:
        return sum(1 for v in self.vertices if v.type == "singular")

    def free_loop_count(self) -> int:
        return sum(1 for e in self.edges if not e.ends)

    def _strands(self, pairing) -> list[list[tuple[int, int, int]]]:
        """Closed strands as lists of (edge, from-slot end, to-slot end) steps.

        ``pairing(vertex, slot)`` gives the slot a strand leaves by after
        entering at ``slot``.
        """
        used = set()
        strands = []
        for e in sorted(self.edges, key=lambda e: e.id):
            if not e.ends:
                strands.append([(e.id, None, None)])
                used.add(e.id)
        for e in sorted(self.edges, key=lambda e: e.id):
            if e.id in used or not e.ends:
                continue
            strand = []
            start = e.ends[0]
            cur = start
            while True:
                edge = self._vidx[cur[0]].rotation[cur[1]]
                nxt = self._other_end(*cur)
                used.add(edge)
                strand.append((edge, cur, nxt))
                cur = (nxt[0], pairing(nxt[0], nxt[1]))
                if cur == start:
                    break
            strands.append(strand)
        return strands

    def component_count(self) -> int:
        """Components of the singular link, following branches through vertices."""
        return len(self._strands(lambda v, s: (s + 2) % 4))

    def resolution_pairing(self, sign):
        from .surface import ResolutionSign

        sign = ResolutionSign.parse(sign)

        def pairing(vid, slot):
            v = self._vidx[vid]
            if v.type == "crossing":
                return (slot + 2) % 4
            k = v.bridge[0]
            if sign is ResolutionSign.POSITIVE:
                pairs = ((k + 1, k + 2), (k + 3, k))
            else:
                pairs = ((k, k + 1), (k + 2, k + 3))
            for a, b in pairs:
                if slot == a % 4:
                    return b % 4
                if slot == b % 4:
                    return a % 4
            raise AssertionError("unreachable")

        return pairing

    def resolution_component_count(self, sign) -> int:
        return len(self._strands(self.resolution_pairing(sign)))

    def euler_characteristic(self) -> int:
        return (
            self.resolution_component_count("-")
            + self.resolution_component_count("+")
            - self.singular_count
        )

    def to_link_diagram(self, sign=None) -> LinkDiagram:
        """Planar-diagram code of the diagram, or of one of its resolutions."""
        if self.singular_count and sign is None:
            raise ValueError("diagram has singular vertices; choose a resolution sign")
        pairing = self.resolution_pairing(sign or "+")
        strands = self._strands(pairing)
        is_crossing = lambda end: end is not None and self._vidx[end[0]].type == "crossing"
        label = {}
        components = []
        for strand in strands:
            # start right after a crossing so labels change only at crossings
            k = next((i for i, st in enumerate(strand) if is_crossing(st[1])), 0)
            strand[:] = strand[k:] + strand[:k]
            labs = []
            for edge, a, b in strand:
                if not labs or is_crossing(a):
                    labs.append(len(label))
                label[(edge, a)] = labs[-1]
            components.append(tuple(labs))
        # at each crossing: label arriving at and leaving from every slot
        arrive, leave, comp_of = {}, {}, {}
        for ci, strand in enumerate(strands):
            for edge, a, b in strand:
                if a is None:
                    continue
                lab = label[(edge, a)]
                leave[a] = lab
                arrive[b] = lab
                comp_of[a] = comp_of[b] = ci
        crossings = []
        for v in sorted(self.vertices, key=lambda v: v.id):
            if v.type != "crossing":
                continue
            o0, o1 = v.over
            u0, u1 = (o0 + 1) % 4, (o1 + 1) % 4
            over_out = o1 if (v.id, o0) in arrive else o0
            under_in = u0 if (v.id, u0) in arrive else u1
            under_out = (under_in + 2) % 4
            sign_c = 1 if under_out == (over_out + 1) % 4 else -1
            slot_label = {}
            for s in range(4):
                slot_label[s] = arrive[(v.id, s)] if (v.id, s) in arrive else leave[(v.id, s)]
            pd = tuple(slot_label[(under_in + k) % 4] for k in range(4))
            crossings.append(Crossing(pd, sign_c, comp_of[(v.id, over_out)], comp_of[(v.id, under_in)]))
        return LinkDiagram(crossings, components)


def _count_faces(d: PlanarMarkedDiagram, vs: set) -> int:
    """Faces of the rotation system restricted to one connected piece."""
    darts = [(v, s) for v in vs for s in range(4)]
    seen = set()
    faces = 0
    for dart in darts:
        if dart in seen:
            continue
        faces += 1
        cur = dart
        while cur not in seen:
            seen.add(cur)
            w, t = d._other_end(*cur)
            cur = (w, (t - 1) % 4)
    return faces


# ----------------------------------------------------------------------------
# from words to diagrams

def _only_index_one_crosses(w: Word) -> Word:
    """Rewrite ``x0 -> b2 x1 d2`` and ``x2 -> b1 b2 x1 d2 d1`` (relation (4))."""
    out = []
    for l in w:
        if l == Letter("x", 0):
            out += [Letter("b", 2), Letter("x", 1), Letter("d", 2)]
        elif l == Letter("x", 2):
            out += [Letter("b", 1), Letter("b", 2), Letter("x", 1), Letter("d", 2), Letter("d", 1)]
        else:
            out.append(l)
    return Word(out)


def project_word(w) -> PlanarMarkedDiagram:
    """The plane diagram of a closed word.

    ``P0`` is drawn above the axis, ``P2`` below and ``P1`` folded over
    ``P0``, with every arc a semicircle.  Singular letters are first moved to
    index 1 so that every cross lies in ``P0 u P2``.
    """
    w = _only_index_one_crosses(as_word(w))
    diagram = decode(w)
    tr = diagram._trace
    codes = w.codes
    arc_mate, point_mate = _mates(codes, tr)
    arcs = {}
    for page, u, v in tr.arcs:
        arcs[u] = arcs[v] = (page, u[0], v[0])

    p1 = sorted(a for a in set(arcs.values()) if a[0] == 1)
    p0 = sorted(a for a in set(arcs.values()) if a[0] == 0)
    vertices: list[dict] = []
    on_arc: dict = {}
    for o in p1:
        for u in p0:
            _, s1, t1 = o
            _, s2, t2 = u
            if s1 < s2 < t1 < t2 or s2 < s1 < t2 < t1:
                c1, c2 = Fraction(s1 + t1, 2), Fraction(s2 + t2, 2)
                r1, r2 = Fraction(t1 - s1, 2), Fraction(t2 - s2, 2)
                x = (r1 * r1 - r2 * r2 + c2 * c2 - c1 * c1) / (2 * (c2 - c1))
                vid = len(vertices)
                # directions: "o+"/"o-" toward the right/left end of the over arc
                if c2 > c1:
                    order = ["o+", "u+", "o-", "u-"]
                else:
                    order = ["o+", "u-", "o-", "u+"]
                vertices.append({"type": "crossing", "order": order, "over": o, "under": u})
                on_arc.setdefault(o, []).append((x, vid))
                on_arc.setdefault(u, []).append((x, vid))
    singular_at = {}
    for pos, c in enumerate(codes):
        if Letter.from_code(c).kind == "x":
            singular_at[pos] = len(vertices)
            # counterclockwise from the east: up-right, up-left, down-left, down-right
            vertices.append({"type": "singular", "order": ["R0", "L0", "L2", "R2"]})

    def slot_of_end(node) -> int:
        pos, j = node
        e = tr.pictures[codes[pos]].ends[j]
        return vertices[singular_at[pos]]["order"].index(f"{e.side}{e.page}")

    incid_strands = []
    for cyc in _cycles(arc_mate, point_mate):
        inc = []  # (vertex, in slot, out slot)
        for u, v in cyc:
            arc = arcs[u]
            forward = v[0] > u[0]
            pts = sorted(on_arc.get(arc, []), reverse=not forward)
            for x, vid in pts:
                role = "o" if vertices[vid]["over"] == arc else "u"
                order = vertices[vid]["order"]
                out_dir = role + ("+" if forward else "-")
                in_dir = role + ("-" if forward else "+")
                inc.append((vid, order.index(in_dir), order.index(out_dir)))
            if v[0] in singular_at:
                nxt = point_mate[v]
                inc.append((singular_at[v[0]], slot_of_end(v), slot_of_end(nxt)))
        incid_strands.append(inc)

    rotation = {vid: [None] * 4 for vid in range(len(vertices))}
    edges = []
    for inc in incid_strands:
        if not inc:
            edges.append(DiagramEdge(len(edges), []))
            continue
        for k in range(len(inc)):
            a, b = inc[k], inc[(k + 1) % len(inc)]
            eid = len(edges)
            edges.append(DiagramEdge(eid, [(a[0], a[2]), (b[0], b[1])]))
            rotation[a[0]][a[2]] = eid
            rotation[b[0]][b[1]] = eid
    dverts = []
    for vid, data in enumerate(vertices):
        if data["type"] == "crossing":
            dverts.append(DiagramVertex(vid, "crossing", rotation[vid], over=(0, 2)))
        else:
            dverts.append(DiagramVertex(vid, "singular", rotation[vid], bridge=(1, 3)))
    d = PlanarMarkedDiagram(dverts, edges)
    d.validate()
    return d


# ----------------------------------------------------------------------------
# the half-edge map used while drawing alpha

class _Map:
    """Plane map with half-edges; ``rot[v]`` lists outgoing half-edges ccw."""

    def __init__(self):
        self.origin: list[int] = []
        self.twin: list[int] = []
        self.kind: list[str] = []  # "D" diagram, "O" over strand under alpha, "A" alpha
        self.rot: dict[int, list[int]] = {}
        self._faces = None

    def new_vertex(self) -> int:
        v = len(self.rot)
        self.rot[v] = []
        return v

    def _new_pair(self, u: int, w: int, kind: str) -> tuple[int, int]:
        h, t = len(self.origin), len(self.origin) + 1
        self.origin += [u, w]
        self.twin += [t, h]
        self.kind += [kind, kind]
        self._faces = None
        return h, t

    def add_edge(self, u, w, kind, after_u=None, after_w=None) -> int:
        h, t = self._new_pair(u, w, kind)
        for v, he, after in ((u, h, after_u), (w, t, after_w)):
            r = self.rot[v]
            if after is None:
                r.append(he)
            else:
                r.insert(r.index(after) + 1, he)
        return h

    def split(self, h: int) -> tuple[int, int, int]:
        """Subdivide the edge of ``h``; returns (new vertex, forward, backward)."""
        t = self.twin[h]
        m = self.new_vertex()
        hm, tm = len(self.origin), len(self.origin) + 1
        self.origin += [m, m]
        self.kind += [self.kind[h], self.kind[h]]
        self.twin += [h, t]
        self.twin[h] = hm
        self.twin[t] = tm
        self.rot[m] = [tm, hm]
        self._faces = None
        return m, tm, hm

    def next(self, h: int) -> int:
        back = self.twin[h]
        r = self.rot[self.origin[back]]
        return r[(r.index(back) - 1) % len(r)]

    def faces(self) -> list[int]:
        if self._faces is None:
            face = [-1] * len(self.origin)
            fid = 0
            for h in range(len(self.origin)):
                if face[h] >= 0:
                    continue
                cur = h
                while face[cur] < 0:
                    face[cur] = fid
                    cur = self.next(cur)
                fid += 1
            self._faces = face
        return self._faces


@dataclass
class _Point:
    kind: str  # "t" transversal, "over-in", "under", "over-out", "x", "bump"
    ends: list = field(default_factory=list)  # [key, page]; key pairs ends of one arc
    vertex: Optional[int] = None
    up: tuple = ()
    down: tuple = ()


class _Alpha:
    """One attempt at drawing alpha through a connected diagram piece."""

    def __init__(self, d: PlanarMarkedDiagram, vids: list[int]):
        self.d = d
        self.m = _Map()
        self.vmap = {vid: self.m.new_vertex() for vid in vids}
        self.slot_he = {}
        for eid in sorted({e for vid in vids for e in d._vidx[vid].rotation}):
            a, b = d._eidx[eid].ends
            h, t = self.m._new_pair(self.vmap[a[0]], self.vmap[b[0]], "D")
            self.slot_he[a] = h
            self.slot_he[b] = t
        for vid in vids:
            self.m.rot[self.vmap[vid]] = [self.slot_he[(vid, s)] for s in range(4)]
        self.points: list[_Point] = []
        self.crossed = 0

    def corner_face(self, corner) -> int:
        return self.m.faces()[corner[1]]

    def route(self, src_face: int, targets: dict) -> Optional[list[int]]:
        """Fewest diagram edges to cross from ``src_face`` to a target face."""
        faces = self.m.faces()
        if src_face in targets:
            return []
        by_face = {}
        for h, f in enumerate(faces):
            if self.m.kind[h] == "D":
                by_face.setdefault(f, []).append(h)
        prev = {src_face: None}
        q = deque([src_face])
        while q:
            f = q.popleft()
            for h in by_face.get(f, []):
                g = faces[self.m.twin[h]]
                if g in prev:
                    continue
                prev[g] = (f, h)
                if g in targets:
                    path = []
                    while prev[g] is not None:
                        f0, h0 = prev[g]
                        path.append(h0)
                        g = f0
                    return path[::-1]
                q.append(g)
        return None

    def walk(self, cur, path: list[int]):
        """Cross the given half-edges from their left side; returns the new corner."""
        m = self.m
        for h in path:
            v, fwd, back = m.split(h)
            m.add_edge(cur[0], v, "A", cur[1], fwd)
            self.points.append(_Point("t", up=(fwd,), down=(back,), vertex=v))
            self.crossed += 1
            cur = (v, back)
        return cur

    def connect(self, cur, corner):
        self.m.add_edge(cur[0], corner[0], "A", cur[1], corner[1])


def _draw_alpha(d: PlanarMarkedDiagram, vids: list[int], order: list[int], bridge_dirs: dict,
                outer_choice: int) -> "_Alpha":
    A = _Alpha(d, vids)
    m = A.m
    inf = m.new_vertex()
    faces = m.faces()
    face_sizes = {}
    for f in faces:
        face_sizes[f] = face_sizes.get(f, 0) + 1
    ranked = sorted(face_sizes, key=lambda f: (-face_sizes[f], f))
    cur = (inf, None)
    cur_face = ranked[outer_choice % len(ranked)]

    def go(target_corner):
        nonlocal cur
        path = A.route(cur_face, {A.corner_face(target_corner): None})
        if path is None:
            raise EncodeError(f"corner {target_corner} is unreachable")
        cur = A.walk(cur, path)

    crossed_loops = set()
    for vid in order:
        v = d._vidx[vid]
        sv = A.vmap[vid]
        he = lambda s, vid=vid: A.slot_he[(vid, s % 4)]
        # an uncrossed loop edge would join a point of alpha to itself or to
        # its neighbour, losing the crossing; give it a point of its own
        for s in range(4):
            eid = v.rotation[s]
            a, b = d._eidx[eid].ends
            if a[0] == b[0] == vid and eid not in crossed_loops:
                crossed_loops.add(eid)
                h = he(s)
                path = A.route(cur_face, {m.faces()[h]: None})
                if path is None:
                    raise EncodeError(f"loop edge {eid} is unreachable")
                cur = A.walk(cur, path + [h])
                cur_face = A.corner_face(cur)
        if v.type == "singular":
            # k: entry corner; slots k, k+3 end up left of alpha, k+1, k+2 right of it
            k = v.bridge[bridge_dirs.get(vid, 0)]
            # cross the k+1 edge just before the vertex and the k+2 edge just
            # after it, so the lower pair leaves to both sides
            go((sv, he(k + 1)))
            cur = A.walk(cur, [he(k + 1)])
            A.connect(cur, (sv, he(k)))
            A.points.append(_Point("x", vertex=sv,
                                   up=(he(k), he(k + 3)), down=(he(k + 1), he(k + 2))))
            cur = A.walk((sv, he(k + 2)), [he(k + 2)])
            cur_face = A.corner_face(cur)
            continue

        # crossing: run along the over strand from slot ``start`` to ``start + 2``
        best = None
        o = v.over[0]
        options = []
        for start in (o, o + 2):
            options.append((start, start, "low"))
            options.append((start, start + 3, "high"))
        for idx, (start, ecs, side) in enumerate(options):
            path = A.route(cur_face, {A.corner_face((sv, he(ecs))): None})
            if path is None:
                continue
            key = (len(path), idx)
            if best is None or key < best[0]:
                best = (key, start, side, path)
        if best is None:
            raise EncodeError(f"vertex {vid} is unreachable")
        _, start, side, path = best
        cur = A.walk(cur, path)
        end = start + 2
        s_v, s_fwd, s_back = m.split(he(start))
        t_v, t_fwd, t_back = m.split(he(end))
        for h in (he(start), he(end)):
            m.kind[h] = m.kind[m.twin[h]] = "O"
        # the corner after slot ``start`` lies left of that arm, the one before it right
        if side == "low":
            s_corner, t_corner = (s_v, s_fwd), (t_v, t_back)
            s_up, s_down, t_up, t_down = (s_fwd,), (), (t_fwd,), ()
        else:
            s_corner, t_corner = (s_v, s_back), (t_v, t_fwd)
            s_up, s_down, t_up, t_down = (), (s_fwd,), (), (t_fwd,)
        A.connect(cur, s_corner)
        key = ("P1", vid)
        A.points.append(_Point("over-in", up=s_up, down=s_down, vertex=s_v, ends=[[key, 1]]))
        A.points.append(_Point("under", up=(he(start + 3),), down=(he(start + 1),), vertex=sv))
        A.points.append(_Point("over-out", up=t_up, down=t_down, vertex=t_v, ends=[[key, 1]]))
        cur = t_corner
        cur_face = A.corner_face(cur)

    if not A.points:
        raise EncodeError("empty piece")
    inf_corner = (inf, m.rot[inf][0])
    go(inf_corner)
    A.connect(cur, inf_corner)
    return A


def _read_points(A: _Alpha) -> list[_Point]:
    """Attach page data to every end; diagram arcs are keyed by their half-edges."""
    m = A.m
    points = A.points
    for pt in points:
        for h in pt.up:
            pt.ends.append([("D", min(h, m.twin[h])), 0])
        for h in pt.down:
            pt.ends.append([("D", min(h, m.twin[h])), 2])
    return points


def _letters(points: list[_Point]) -> Optional[list[Letter]]:
    """Assign letters; returns None when a cross has both lower ends on one side."""
    # insert P1 bumps around crosses whose upper ends leave on one side
    where = {}
    for i, pt in enumerate(points):
        for key, page in pt.ends:
            where.setdefault(key, []).append(i)
    for key, idx in where.items():
        if len(idx) != 2:
            raise EncodeError(f"arc {key} has {len(idx)} ends")

    def side(i, key):
        a, b = where[key]
        other = b if a == i else a
        if other == i:
            raise EncodeError(f"arc {key} returns to its own point")
        return "R" if other > i else "L"

    expanded: list[tuple] = []  # (point, ends as (key, page)) after bumps
    for i, pt in enumerate(points):
        if pt.kind != "x":
            expanded.append((i, [tuple(e) for e in pt.ends]))
            continue
        (k_nw, p_nw), (k_ne, p_ne), (k_sw, _), (k_se, _) = [tuple(e) for e in pt.ends]
        if side(i, k_sw) == side(i, k_se):
            return None
        if side(i, k_nw) != side(i, k_ne):
            expanded.append((i, [tuple(e) for e in pt.ends]))
            continue
        bl, br = ("bump", i, "L"), ("bump", i, "R")
        expanded.append((("u", i), [(bl, 1), (k_nw, 0)]))
        expanded.append((i, [(bl, 1), (br, 1), (k_sw, 2), (k_se, 2)]))
        expanded.append((("v", i), [(br, 1), (k_ne, 0)]))

    where = {}
    for pos, (_, ends) in enumerate(expanded):
        for key, page in ends:
            where.setdefault(key, []).append((pos, page))
    letters = []
    for pos, (src, ends) in enumerate(expanded):
        got = []
        for key, page in ends:
            (p1, pg1), (p2, pg2) = where[key]
            if pg1 != pg2:
                raise EncodeError(f"arc {key} changes page")
            other = p2 if p1 == pos else p1
            got.append(End(page, "R" if other > pos else "L"))
        if len(got) == 2:
            letters.append(letter_for_ends(got))
        else:
            pages = {e.page for e in got}
            missing = ({0, 1, 2} - pages).pop()
            for pg in pages:
                if sorted(e.side for e in got if e.page == pg) != ["L", "R"]:
                    raise EncodeError(f"cross at axis point {pos} is not transversal")
            letters.append(Letter("x", missing))
    return letters


def _faithful(d: PlanarMarkedDiagram, vids: set, w: Word) -> bool:
    """The word has the piece's components, singular points and crossings."""
    piece = PlanarMarkedDiagram(
        [d._vidx[v] for v in sorted(vids)],
        [e for e in d.edges if e.ends and e.ends[0][0] in vids],
    )
    try:
        dec = decode(w)
    except DecodeError:
        return False
    if dec.component_count != piece.component_count() or w.count("x") != piece.singular_count:
        return False
    return w.has_singular() or to_link_diagram(w).crossing_count == piece.crossing_count


def _encode_piece(d: PlanarMarkedDiagram, vids: set) -> Word:
    order = sorted(vids)
    singular = [v for v in order if d._vidx[v].type == "singular"]
    orders = [order, order[::-1]] + [order[k:] + order[:k] for k in range(1, len(order))]
    attempts = 0
    for outer_choice in range(3):
        for ordr in orders:
            for dirs in itertools.product((0, 1), repeat=len(singular)):
                attempts += 1
                if attempts > MAX_ALPHA_ATTEMPTS:
                    raise EncodeError(
                        f"no path alpha found after {MAX_ALPHA_ATTEMPTS} attempts "
                        f"(vertices {order})"
                    )
                A = _draw_alpha(d, sorted(vids), ordr, dict(zip(singular, dirs)), outer_choice)
                letters = _letters(_read_points(A))
                if letters is not None and _faithful(d, vids, Word(letters)):
                    return Word(letters)
    raise EncodeError(f"no path alpha found (vertices {order})")


def encode_diagram(d: PlanarMarkedDiagram) -> Word:
    """A word encoding the diagram; pieces are placed side by side on the axis."""
    d.validate()
    out = []
    for vs, _ in sorted(d._graph_components(), key=lambda c: min(c[0])):
        out += list(_encode_piece(d, vs))
    for _ in range(d.free_loop_count()):
        out += [Letter("a", 1), Letter("c", 1)]
    return Word(out)
