"""
Flag maps of the cell decompositions of the projective plane cut out by wiring diagrams.

A flag is an (edge, end, side) triple with id edge*4 + end*2 + side. The three
fixed-point-free involutions are
    alpha0: switch the end of the edge,
    alpha1: switch to the neighbouring edge around the vertex,
    alpha2: switch the side of the edge.
Faces are the orbits of <alpha0, alpha1>, vertices of <alpha1, alpha2>.
"""

import hashlib
from collections import deque
from typing import Dict, List, Sequence, Tuple

# (edge, end, global side that lies above the wire in the strip at this end)
HalfEdge = Tuple[int, int, int]


class FlagMap:
    """A map given by its three flag involutions"""

    def __init__(self, alpha0: List[int], alpha1: List[int], alpha2: List[int]):
        self.alphas = (alpha0, alpha1, alpha2)
        self.size = len(alpha0)

    def orbits(self, generators: Sequence[int]) -> List[int]:
        """Orbit id per flag under the given alphas, ids in order of first flag"""
        orbit = [-1] * self.size
        count = 0
        for start in range(self.size):
            if orbit[start] >= 0:
                continue
            orbit[start] = count
            stack = [start]
            while stack:
                flag = stack.pop()
                for g in generators:
                    neighbour = self.alphas[g][flag]
                    if orbit[neighbour] < 0:
                        orbit[neighbour] = count
                        stack.append(neighbour)
            count += 1
        return orbit

    def count_cells(self) -> Tuple[int, int, int]:
        """(V, E, F)"""
        return (
            len(set(self.orbits((1, 2)))),
            len(set(self.orbits((0, 2)))),
            len(set(self.orbits((0, 1)))),
        )

    def euler_characteristic(self) -> int:
        v, e, f = self.count_cells()
        return v - e + f

    def _initial_colors(self) -> List[int]:
        vertex, face = self.orbits((1, 2)), self.orbits((0, 1))
        vertex_size: Dict[int, int] = {}
        face_size: Dict[int, int] = {}
        for flag in range(self.size):
            vertex_size[vertex[flag]] = vertex_size.get(vertex[flag], 0) + 1
            face_size[face[flag]] = face_size.get(face[flag], 0) + 1
        return self._rank([(vertex_size[vertex[f]], face_size[face[f]]) for f in range(self.size)])

    def refined_colors(self) -> List[int]:
        """Colour refinement; equal colours are preserved by every isomorphism"""
        colors = self._initial_colors()
        classes = len(set(colors))
        while True:
            signature = [
                (colors[f],) + tuple(colors[alpha[f]] for alpha in self.alphas)
                for f in range(self.size)
            ]
            refined = self._rank(signature)
            refined_classes = len(set(refined))
            if refined_classes == classes:
                return refined
            colors, classes = refined, refined_classes

    def code_from(self, root: int) -> Tuple[int, ...]:
        """Breadth-first relabelling from root, listing the alpha images of each label"""
        label = [-1] * self.size
        label[root] = 0
        order = [root]
        queue = deque([root])
        while queue:
            flag = queue.popleft()
            for alpha in self.alphas:
                neighbour = alpha[flag]
                if label[neighbour] < 0:
                    label[neighbour] = len(order)
                    order.append(neighbour)
                    queue.append(neighbour)
        if len(order) != self.size:
            raise ValueError("flag map is not connected")
        return tuple(label[alpha[flag]] for flag in order for alpha in self.alphas)

    def canonical_code(self) -> Tuple[int, ...]:
        """Least code over the roots in the smallest refined colour class"""
        colors = self.refined_colors()
        members: Dict[int, List[int]] = {}
        for flag, color in enumerate(colors):
            members.setdefault(color, []).append(flag)
        _, roots = min(((len(flags), color), flags) for color, flags in members.items())
        return min(self.code_from(root) for root in roots)

    @staticmethod
    def _rank(values: List) -> List[int]:
        ranking = {value: rank for rank, value in enumerate(sorted(set(values)))}
        return [ranking[value] for value in values]


def wiring_flag_map(k: int, events: Sequence[Tuple[int, int]]) -> FlagMap:
    """Flag map of a valid wiring diagram; events are (start, size) with 0-based start

    Each wire gets one edge between consecutive crossings and a wrap edge from
    its last crossing back to its first through infinity. The wrap edge glues
    the strip's upper side at the right to its lower side at the left.
    """
    order = list(range(k))
    visits: List[List[int]] = [[] for _ in range(k)]
    blocks: List[Tuple[List[int], List[int]]] = []
    for vertex, (p, r) in enumerate(events):
        incoming = order[p:p + r]
        order[p:p + r] = reversed(incoming)
        blocks.append((incoming, order[p:p + r]))
        for wire in incoming:
            visits[wire].append(vertex)

    incoming_half: Dict[Tuple[int, int], HalfEdge] = {}
    outgoing_half: Dict[Tuple[int, int], HalfEdge] = {}
    edge = 0
    for wire in range(k):
        path = visits[wire]
        for left, right in zip(path, path[1:]):
            outgoing_half[(left, wire)] = (edge, 0, 0)
            incoming_half[(right, wire)] = (edge, 1, 0)
            edge += 1
        outgoing_half[(path[-1], wire)] = (edge, 0, 0)
        incoming_half[(path[0], wire)] = (edge, 1, 1)
        edge += 1

    size = 4 * edge
    alpha0 = [flag ^ 2 for flag in range(size)]
    alpha2 = [flag ^ 1 for flag in range(size)]
    alpha1 = [-1] * size

    def flag(half: HalfEdge, upper: bool) -> int:
        e, end, up = half
        return e * 4 + end * 2 + (up if upper else 1 - up)

    def join(a: int, b: int):
        alpha1[a], alpha1[b] = b, a

    for vertex, (incoming, outgoing) in enumerate(blocks):
        ins = [incoming_half[(vertex, wire)] for wire in incoming]
        outs = [outgoing_half[(vertex, wire)] for wire in outgoing]
        r = len(ins)
        for j in range(r - 1):
            join(flag(outs[j], False), flag(outs[j + 1], True))
            join(flag(ins[j + 1], True), flag(ins[j], False))
        join(flag(outs[-1], False), flag(ins[-1], False))
        join(flag(ins[0], True), flag(outs[0], True))

    return FlagMap(alpha0, alpha1, alpha2)


def class_digest(k: int, code: Sequence[int]) -> str:
    """Short stable identifier of a canonical code"""
    payload = f"{k}:" + ",".join(str(v) for v in code)
    return hashlib.sha256(payload.encode("ascii")).hexdigest()[:16]
