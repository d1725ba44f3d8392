"""Finite root systems, Weyl groups and Bruhat order.

Weights are integer vectors in the fundamental-weight basis. Weyl group
elements are integer matrices acting on those coordinates; two elements are
equal iff their matrices are. Simple reflections are indexed from 0 in code
and from 1 in every user-facing rendering (CLI, JSON).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels
from .errors import UnsupportedType

MAX_WEYL_ORDER = 1152

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4, "E": 6, "F": 4, "G": 2}


def weyl_order(family: str, rank: int) -> int:
    """Classical order of the Weyl group of the given type."""
    if family == "A":
        return math.factorial(rank + 1)
    if family in "BC":
        return 2**rank * math.factorial(rank)
    if family == "D":
        return 2 ** (rank - 1) * math.factorial(rank)
    if family == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[rank]
    if family == "F":
        return 1152
    if family == "G":
        return 12
    raise UnsupportedType(f"unknown family {family!r}")


def cartan_matrix(family: str, rank: int) -> np.ndarray:
    """Cartan matrix with ``C[i, j] = <alpha_j, alpha_i^vee>`` (Bourbaki labelling)."""
    family = family.upper()
    if family not in _MIN_RANK:
        raise UnsupportedType(f"unknown Cartan family {family!r}")
    if rank < _MIN_RANK[family] or (family == "E" and rank > 8) or (
        family in "FG" and rank != _MIN_RANK[family]
    ):
        raise UnsupportedType(f"no finite root system of type {family}{rank}")
    r = rank
    C = 2 * np.eye(r, dtype=np.int64)

    def link(i, j, a=-1, b=-1):
        # C[i, j] = a, C[j, i] = b
        C[i, j] = a
        C[j, i] = b

    if family in "ABC":
        for i in range(r - 1):
            link(i, i + 1)
        if family == "B":
            link(r - 2, r - 1, -1, -2)  # alpha_r short
        elif family == "C":
            link(r - 2, r - 1, -2, -1)  # alpha_r long
    elif family == "D":
        for i in range(r - 2):
            link(i, i + 1)
        link(r - 3, r - 1)
    elif family == "E":
        # 1-3-4-5-6(-7-8), with 2 attached to 4
        link(0, 2)
        link(1, 3)
        for i in range(2, r - 1):
            link(i, i + 1)
    elif family == "F":
        link(0, 1)
        link(1, 2, -1, -2)  # alpha_1, alpha_2 long; alpha_3, alpha_4 short
        link(2, 3)
    elif family == "G":
        link(0, 1, -3, -1)  # alpha_1 short
    return C


@dataclass(frozen=True)
class CartanDatum:
    family: str
    rank: int
    cartan_matrix: np.ndarray

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class Root:
    simple_coeffs: tuple[int, ...]
    weight_coords: tuple[int, ...]
    height: int


@dataclass(frozen=True, eq=False)
class WeylElem:
    """Element of a Weyl group; ``word`` is the canonical reduced word (0-based)."""

    index: int
    matrix: np.ndarray
    length: int
    word: tuple[int, ...]

    def __eq__(self, other):
        if not isinstance(other, WeylElem):
            return NotImplemented
        return np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def __repr__(self):
        word = " ".join(f"s{i + 1}" for i in self.word) or "id"
        return f"WeylElem({word})"

    def act(self, weight) -> np.ndarray:
        return self.matrix @ np.asarray(weight, dtype=np.int64)


def parse_cartan(spec: str) -> tuple[str, int]:
    spec = spec.strip()
    if len(spec) < 2 or not spec[0].isalpha() or not spec[1:].isdigit():  # e.g. "B3"
        raise UnsupportedType(f"cannot parse Cartan type {spec!r}")
    return spec[0].upper(), int(spec[1:])


class RootSystem:
    """Root system of a finite Cartan type together with its enumerated Weyl group.

    Elements are indexed in breadth-first discovery order from the identity
    (right multiplication by s_1, ..., s_r); every W-indexed vector in the
    package uses this index.
    """

    def __init__(self, family: str, rank: int, max_weyl_order: int = MAX_WEYL_ORDER):
        family = family.upper()
        C = cartan_matrix(family, rank)
        order = weyl_order(family, rank)
        if order > max_weyl_order:
            raise UnsupportedType(
                f"|W({family}{rank})| = {order} exceeds the configured bound {max_weyl_order}"
            )
        self.datum = CartanDatum(family, rank, C)
        self.family = family
        self.rank = rank
        self.cartan = C
        self.det = int(round(np.linalg.det(C)))
        self.adj = np.rint(self.det * np.linalg.inv(C)).astype(np.int64)
        assert np.array_equal(self.adj @ C, self.det * np.eye(rank, dtype=np.int64))
        self.rho = np.ones(rank, dtype=np.int64)
        self._build_roots()
        self._build_group()
        if len(self.elements) != order:
            raise AssertionError(f"enumerated {len(self.elements)} elements, expected {order}")

    # -- construction -------------------------------------------------

    def _build_roots(self):
        r = self.rank
        C = self.cartan
        simple = [tuple(int(x) for x in row) for row in np.eye(r, dtype=np.int64)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                b = np.array(beta, dtype=np.int64)
                pair = C @ b
                for i in range(r):
                    img = b.copy()
                    img[i] -= pair[i]
                    key = tuple(int(x) for x in img)
                    if key not in seen:
                        seen.add(key)
                        nxt.append(key)
            frontier = nxt
        positive = [m for m in seen if all(x >= 0 for x in m)]
        positive.sort(key=lambda m: (sum(m), tuple(-x for x in m)))
        self.pos_simple = np.array(positive, dtype=np.int64).reshape(-1, r)
        self.pos_weight = self.pos_simple @ C.T
        self.heights = self.pos_simple.sum(axis=1)
        self.roots = [
            Root(tuple(int(x) for x in m), tuple(int(x) for x in a), int(sum(m)))
            for m, a in zip(self.pos_simple, self.pos_weight)
        ]
        self.simple_roots = C.T.copy()  # row i = alpha_i in weight coordinates
        # weight coords -> (root index, sign)
        self._root_lookup = {}
        for k, a in enumerate(self.pos_weight):
            self._root_lookup[tuple(int(x) for x in a)] = (k, 1)
            self._root_lookup[tuple(int(-x) for x in a)] = (k, -1)

    def _build_group(self):
        r = self.rank
        C = self.cartan
        gens = []
        for i in range(r):
            # s_i(lam) = lam - lam_i * alpha_i
            S = np.eye(r, dtype=np.int64)
            S[:, i] -= C[:, i]
            gens.append(S)
        self.generators = gens
        ident = np.eye(r, dtype=np.int64)
        mats = [ident]
        index = {ident.tobytes(): 0}
        depth = [0]
        right = [[-1] * 1 for _ in range(r)]
        head = 0
        while head < len(mats):
            M = mats[head]
            for i in range(r):
                X = M @ gens[i]
                key = X.tobytes()
                j = index.get(key)
                if j is None:
                    j = len(mats)
                    index[key] = j
                    mats.append(X)
                    depth.append(depth[head] + 1)
                    for row in right:
                        row.append(-1)
                right[i][head] = j
            head += 1
        n = len(mats)
        self._index = index
        self.mats = np.array(mats, dtype=np.int64)
        self.right = np.array(right, dtype=np.int64)
        left = np.empty((r, n), dtype=np.int64)
        for i in range(r):
            for w in range(n):
                left[i, w] = index[(gens[i] @ mats[w]).tobytes()]
        self.left = left
        self.lengths = self._inversion_counts()
        self.depth = np.array(depth, dtype=np.int64)
        # smallest left descent: l(s_i w) < l(w)
        desc = np.full(n, -1, dtype=np.int64)
        for w in range(n):
            for i in range(r):
                if self.lengths[left[i, w]] < self.lengths[w]:
                    desc[w] = i
                    break
        self.desc = desc
        self.by_length = np.argsort(self.lengths, kind="stable")
        words = [()] * n
        for w in self.by_length:
            if self.lengths[w]:
                i = int(desc[w])
                words[w] = (i,) + words[left[i, w]]
        inverse = np.empty(n, dtype=np.int64)
        for w in range(n):
            u = 0
            for i in reversed(words[w]):
                u = right[i][u]
            inverse[w] = u
        self.inverse = inverse
        self.elements = [
            WeylElem(w, self.mats[w], int(self.lengths[w]), words[w]) for w in range(n)
        ]
        for e in self.elements:
            e.matrix.flags.writeable = False
        self.identity = self.elements[0]
        self.w0 = self.elements[int(np.argmax(self.lengths))]
        self._build_reflections()

    def _inversion_counts(self) -> np.ndarray:
        images = self.mats @ self.pos_weight.T  # (n, r, N)
        heights = np.einsum("i,ij,wjk->wk", np.ones(self.rank, dtype=np.int64), self.adj, images)
        return (heights < 0).sum(axis=1).astype(np.int64)

    def _build_reflections(self):
        N = len(self.roots)
        refl = np.full(N, -1, dtype=np.int64)
        for w in range(len(self.elements)):
            M = self.mats[w]
            for j in range(self.rank):
                k, sign = self._root_lookup[tuple(int(x) for x in M @ self.simple_roots[j])]
                if sign > 0 and refl[k] < 0:
                    ws = self.right[j, w]
                    refl[k] = self.mul_index(ws, self.inverse[w])
            if (refl >= 0).all():
                break
        self.reflection_index = refl

    # -- element access -----------------------------------------------

    def __len__(self):
        return len(self.elements)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def num_positive_roots(self) -> int:
        return len(self.roots)

    def index_of(self, matrix: np.ndarray) -> int:
        return self._index[np.ascontiguousarray(matrix, dtype=np.int64).tobytes()]

    def element(self, word=()) -> WeylElem:
        """Product s_{i1} ... s_{ik} of a (not necessarily reduced) 0-based word."""
        u = 0
        for i in word:
            if not 0 <= i < self.rank:
                raise ValueError(f"simple reflection index {i + 1} out of range 1..{self.rank}")
            u = int(self.right[i, u])
        return self.elements[u]

    def simple_reflection(self, i: int) -> WeylElem:
        return self.elements[int(self.right[i, 0])]

    def mul_index(self, a: int, b: int) -> int:
        u = int(a)
        for i in self.elements[b].word:
            u = int(self.right[i, u])
        return u

    def mul(self, a: WeylElem, b: WeylElem) -> WeylElem:
        return self.elements[self.mul_index(a.index, b.index)]

    def inv(self, w: WeylElem) -> WeylElem:
        return self.elements[int(self.inverse[w.index])]

    def act(self, w: WeylElem, weight) -> np.ndarray:
        return w.act(weight)

    def reduced_word(self, w: WeylElem) -> tuple[int, ...]:
        return w.word

    def reflection(self, k: int) -> WeylElem:
        """The reflection s_beta for the k-th positive root."""
        return self.elements[int(self.reflection_index[k])]

    def weight_height(self, weight) -> int | None:
        """<weight, rho-check>, or None if the weight is not in the root lattice."""
        num = int(np.ones(self.rank, dtype=np.int64) @ self.adj @ np.asarray(weight, dtype=np.int64))
        q, rem = divmod(num, self.det)
        return None if rem else q

    def root_sign(self, weight) -> int:
        """+1/-1 for a positive/negative root given in weight coordinates."""
        return self._root_lookup[tuple(int(x) for x in weight)][1]

    # -- Bruhat order -------------------------------------------------

    def bruhat_leq(self, v: WeylElem, w: WeylElem) -> bool:
        """v <= w, by descending along a left descent of w."""
        vi, wi = v.index, w.index
        lengths = self.lengths
        while lengths[wi] > 0:
            i = self.desc[wi]
            sv = self.left[i, vi]
            if lengths[sv] < lengths[vi]:
                vi = sv
            wi = self.left[i, wi]
        return vi == 0

    @cached_property
    def bruhat_matrix(self) -> np.ndarray:
        """Boolean matrix ``M[v, w] = (v <= w)``."""
        geq = _kernels.bruhat_table(self.left, self.lengths, self.desc, self.by_length)
        return np.ascontiguousarray(geq.T)

    def lower_interval(self, w: WeylElem) -> list[WeylElem]:
        col = self.bruhat_matrix[:, w.index]
        return [self.elements[v] for v in np.flatnonzero(col)]

    def reflections_leq(self, w: WeylElem) -> list[Root]:
        return [self.roots[k] for k in self.reflection_indices_leq(w)]

    def reflection_indices_leq(self, w: WeylElem) -> list[int]:
        return [
            k
            for k in range(len(self.roots))
            if self.bruhat_leq(self.reflection(k), w)
        ]


_CACHE: dict[tuple[str, int], RootSystem] = {}


def build_root_system(family: str, rank: int, max_weyl_order: int = MAX_WEYL_ORDER) -> RootSystem:
    family = family.upper()
    key = (family, rank)
    rs = _CACHE.get(key)
    if rs is None:
        rs = RootSystem(family, rank, max_weyl_order)
        _CACHE[key] = rs
    return rs
