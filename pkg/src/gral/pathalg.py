"""Relative Cohn path algebras C_R^X(E), Leavitt when X = Reg(E).

Elements are kept in normal form on the reduced-monomial basis: a monomial
alpha.beta* is reduced unless alpha and beta both end in the special
(least-named) edge of a vertex in X.  The rewriting engine is generic over
the coefficient arithmetic so the same rules can run with integer
coefficients when products have to be tracked symbolically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .coeffring import Ring
from .errors import (GralError, NotDegreeZero, NotInDn, SpecMismatch,
                     UnknownGenerator, XNotRegular)
from .graphs import CohnPair, Graph, Path


@dataclass(frozen=True)
class Monomial:
    alpha: Path
    beta: Path

    @property
    def degree(self) -> int:
        return len(self.alpha.edges) - len(self.beta.edges)

    def sort_key(self):
        return (self.degree, self.alpha.sort_key(), self.beta.sort_key())

    def involute(self) -> "Monomial":
        return Monomial(self.beta, self.alpha)


class AlgebraSpec:
    """Graph, coefficient ring and relative subset X, plus the special-edge
    choice that fixes the reduced basis."""

    def __init__(self, graph: Graph, ring: Ring, x=None):
        self.graph = graph
        self.ring = ring
        reg = frozenset(graph.regular)
        self.x = reg if x is None else frozenset(x)
        if not self.x <= reg:
            raise XNotRegular(f"X contains non-regular vertices: {sorted(self.x - reg)}")
        self.special = {v: graph.out_edges(v)[0].name for v in self.x}
        self._joiner = "" if all(len(e.name) == 1 for e in graph.edges) else "."

    @classmethod
    def leavitt(cls, graph: Graph, ring: Ring) -> "AlgebraSpec":
        return cls(graph, ring, None)

    @classmethod
    def cohn(cls, graph: Graph, ring: Ring, x=()) -> "AlgebraSpec":
        return cls(graph, ring, x)

    @classmethod
    def from_pair(cls, pair: CohnPair, ring: Ring) -> "AlgebraSpec":
        return cls(pair.graph, ring, pair.x)

    @property
    def is_leavitt(self) -> bool:
        return self.x == frozenset(self.graph.regular)

    def __eq__(self, other):
        return (isinstance(other, AlgebraSpec) and other.graph == self.graph
                and other.ring == self.ring and other.x == self.x)

    def __hash__(self):
        return hash((self.graph, self.ring, self.x))

    def __repr__(self):
        name = "L" if self.is_leavitt else f"C^{sorted(self.x)}"
        return f"{name}_{self.ring.describe()}({self.graph!r})"

    def path_str(self, p: Path) -> str:
        if not p.edges:
            return p.src
        return self._joiner.join(p.edges)

    def monomial_str(self, m: Monomial) -> str:
        a, b = m.alpha, m.beta
        if not b.edges:
            return self.path_str(a)
        bs = self.path_str(b)
        ghost = bs + "*" if len(b.edges) == 1 else "(" + bs + ")*"
        if not a.edges:
            return ghost
        return self.path_str(a) + ghost


# ---------------------------------------------------------------------------
# Rewriting engine


class _Ops:
    __slots__ = ("add", "neg", "is_zero")

    def __init__(self, add, neg, is_zero):
        self.add = add
        self.neg = neg
        self.is_zero = is_zero


def _ring_ops(ring: Ring) -> _Ops:
    zero = ring.zero
    return _Ops(ring.add, ring.neg, lambda c: c == zero)


INT_OPS = _Ops(lambda a, b: a + b, lambda a: -a, lambda c: c == 0)


def _mono_mul(spec: AlgebraSpec, m1: Monomial, m2: Monomial) -> Optional[Monomial]:
    """(a b*)(c d*) before relation-(v) reduction: a single monomial or None."""
    b, c = m1.beta, m2.alpha
    lb, lc = len(b.edges), len(c.edges)
    if lb <= lc:
        if c.edges[:lb] != b.edges:
            return None
        if lb == 0 and b.src != c.src:
            return None
        rest = c.edges[lb:]
        alpha = Path(m1.alpha.src, c.dst, m1.alpha.edges + rest)
        return Monomial(alpha, m2.beta)
    if b.edges[:lc] != c.edges:
        return None
    if lc == 0 and c.src != b.src:
        return None
    rest = b.edges[lc:]
    beta = Path(m2.beta.src, b.dst, m2.beta.edges + rest)
    return Monomial(m1.alpha, beta)


def _reducible(spec: AlgebraSpec, m: Monomial) -> bool:
    a, b = m.alpha, m.beta
    if not a.edges or not b.edges or a.edges[-1] != b.edges[-1]:
        return False
    return spec.special.get(spec.graph.edge(a.edges[-1]).src) == a.edges[-1]


def _drop_last(spec: AlgebraSpec, p: Path) -> Path:
    v = spec.graph.edge(p.edges[-1]).src
    return Path(p.src if p.edges[:-1] else v, v, p.edges[:-1])


def _append(p: Path, edge) -> Path:
    return Path(p.src, edge.dst, p.edges + (edge.name,))


def _rewrite(spec: AlgebraSpec, m: Monomial):
    """alpha0 f (beta0 f)* = alpha0 beta0* - sum of the non-special siblings."""
    f = m.alpha.edges[-1]
    v = spec.graph.edge(f).src
    a0 = _drop_last(spec, m.alpha)
    b0 = _drop_last(spec, m.beta)
    out = [(Monomial(a0, b0), 1)]
    for other in spec.graph.out_edges(v):
        if other.name != f:
            out.append((Monomial(_append(a0, other), _append(b0, other)), -1))
    return out


def _reduce(spec: AlgebraSpec, terms: dict, ops: _Ops, chooser=None) -> dict:
    """Apply relation-(v) rewrites to a fixed point.

    chooser picks the next reducible monomial from a sorted list; the default
    is leftmost (minimal sort key), used everywhere outside confluence tests.
    """
    terms = {m: c for m, c in terms.items() if not ops.is_zero(c)}
    pending = {m for m in terms if _reducible(spec, m)}
    while pending:
        if chooser is None:
            m = min(pending, key=Monomial.sort_key)
        else:
            m = chooser(sorted(pending, key=Monomial.sort_key))
        pending.discard(m)
        c = terms.pop(m, None)
        if c is None:
            continue
        for m2, sign in _rewrite(spec, m):
            c2 = c if sign > 0 else ops.neg(c)
            if m2 in terms:
                c2 = ops.add(terms[m2], c2)
            if ops.is_zero(c2):
                terms.pop(m2, None)
                pending.discard(m2)
            else:
                terms[m2] = c2
                if _reducible(spec, m2):
                    pending.add(m2)
    return terms


# ---------------------------------------------------------------------------
# Elements


class AlgebraElement:
    """Finite coefficient-weighted sum of reduced monomials; immutable."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebraSpec, terms: dict):
        self.spec = spec
        self.terms = terms

    @staticmethod
    def make(spec: AlgebraSpec, terms: dict) -> "AlgebraElement":
        zero = spec.ring.zero
        return AlgebraElement(spec, {m: c for m, c in terms.items() if c != zero})

    @staticmethod
    def zero(spec: AlgebraSpec) -> "AlgebraElement":
        return AlgebraElement(spec, {})

    def support(self):
        return sorted(self.terms, key=Monomial.sort_key)

    def coeff(self, m: Monomial):
        return self.terms.get(m, self.spec.ring.zero)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if self.spec != other.spec:
            raise SpecMismatch("elements belong to different algebra specs")

    def __add__(self, other):
        self._check(other)
        ring = self.spec.ring
        out = dict(self.terms)
        for m, c in other.terms.items():
            c2 = ring.add(out.get(m, ring.zero), c)
            if c2 == ring.zero:
                out.pop(m, None)
            else:
                out[m] = c2
        return AlgebraElement(self.spec, out)

    def __neg__(self):
        ring = self.spec.ring
        return AlgebraElement(self.spec, {m: ring.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        ring = self.spec.ring
        raw = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(self.spec, m1, m2)
                if m is None:
                    continue
                c = ring.mul(c1, c2)
                if m in raw:
                    c = ring.add(raw[m], c)
                if c == ring.zero:
                    raw.pop(m, None)
                else:
                    raw[m] = c
        return AlgebraElement(self.spec, _reduce(self.spec, raw, _ring_ops(ring)))

    def scale(self, r) -> "AlgebraElement":
        ring = self.spec.ring
        out = {}
        for m, c in self.terms.items():
            c2 = ring.mul(r, c)
            if c2 != ring.zero:
                out[m] = c2
        return AlgebraElement(self.spec, out)

    def involution(self) -> "AlgebraElement":
        return AlgebraElement(self.spec, {m.involute(): c for m, c in self.terms.items()})

    def homogeneous_components(self):
        """Mapping degree -> component; empty for the zero element."""
        comps = {}
        for m, c in self.terms.items():
            comps.setdefault(m.degree, {})[m] = c
        return {d: AlgebraElement(self.spec, t) for d, t in sorted(comps.items())}

    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self.terms}) <= 1

    def degree(self) -> Optional[int]:
        """Degree of a nonzero homogeneous element, None for zero."""
        degs = {m.degree for m in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise GralError("element is not homogeneous")
        return degs.pop()

    def __eq__(self, other):
        return (isinstance(other, AlgebraElement) and other.spec == self.spec
                and other.terms == self.terms)

    def __hash__(self):
        return hash((self.spec, tuple(sorted(self.terms.items(),
                                             key=lambda kv: kv[0].sort_key()))))

    def __repr__(self):
        return format_element(self)


def format_element(x: AlgebraElement) -> str:
    if x.is_zero:
        return "0"
    ring = x.spec.ring
    parts = []
    for m in x.support():
        c = x.terms[m]
        ms = x.spec.monomial_str(m)
        parts.append(ms if c == ring.one else f"{ring.format_element(c)}*{ms}")
    return " + ".join(parts)


# -- generators and words ----------------------------------------------------


def vertex_element(spec: AlgebraSpec, v: str) -> AlgebraElement:
    p = spec.graph.vertex_path(v)
    return AlgebraElement(spec, {Monomial(p, p): spec.ring.one})


def edge_element(spec: AlgebraSpec, name: str) -> AlgebraElement:
    e = spec.graph.edge(name)
    p = spec.graph.make_path([name])
    q = spec.graph.vertex_path(e.dst)
    return AlgebraElement(spec, {Monomial(p, q): spec.ring.one})


def ghost_element(spec: AlgebraSpec, name: str) -> AlgebraElement:
    return edge_element(spec, name).involution()


def generator(spec: AlgebraSpec, symbol: str) -> AlgebraElement:
    g = spec.graph
    if symbol in set(g.vertices):
        return vertex_element(spec, symbol)
    edge_names = {e.name for e in g.edges}
    if symbol in edge_names:
        return edge_element(spec, symbol)
    if symbol.endswith("*") and symbol[:-1] in edge_names:
        return ghost_element(spec, symbol[:-1])
    raise UnknownGenerator(f"{symbol!r} is not a generator of {spec!r}")


def word_element(spec: AlgebraSpec, word, coeff=None, chooser=None) -> AlgebraElement:
    """Evaluate a word in the generators v, f, f*."""
    word = list(word)
    if not word:
        raise UnknownGenerator("empty word")
    acc = generator(spec, word[0])
    for symbol in word[1:]:
        acc = _mul_with_chooser(acc, generator(spec, symbol), chooser)
    if coeff is not None:
        acc = acc.scale(coeff)
    return acc


def _mul_with_chooser(x: AlgebraElement, y: AlgebraElement, chooser) -> AlgebraElement:
    if chooser is None:
        return x * y
    ring = x.spec.ring
    raw = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            m = _mono_mul(x.spec, m1, m2)
            if m is None:
                continue
            c = ring.mul(c1, c2)
            if m in raw:
                c = ring.add(raw[m], c)
            raw[m] = c
    return AlgebraElement.make(x.spec, _reduce(x.spec, raw, _ring_ops(ring), chooser))


def normal_form(spec: AlgebraSpec, raw_terms, chooser=None) -> AlgebraElement:
    """Normalize a raw sum given as (coeff, word) pairs or bare words."""
    acc = AlgebraElement.zero(spec)
    for item in raw_terms:
        if isinstance(item, (list, tuple)) and len(item) == 2 and not isinstance(item[0], str):
            coeff, word = item
        else:
            coeff, word = None, item
        acc = acc + word_element(spec, word, coeff, chooser)
    return acc


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y


def add(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x + y


def scale(r, x: AlgebraElement) -> AlgebraElement:
    return x.scale(r)


def involution(x: AlgebraElement) -> AlgebraElement:
    return x.involution()


def identity_element(spec: AlgebraSpec) -> AlgebraElement:
    """Sum of all vertices; the multiplicative identity for finite graphs
    (zero for the null graph)."""
    acc = AlgebraElement.zero(spec)
    for v in spec.graph.vertices:
        acc = acc + vertex_element(spec, v)
    return acc


# -- spanning sets ------------------------------------------------------------


def reduced_monomials(spec: AlgebraSpec, degree: Optional[int] = None,
                      max_len: int = 3):
    """Reduced monomials with real and ghost lengths at most max_len,
    optionally restricted to one degree; sorted."""
    g = spec.graph
    by_range = {v: [] for v in g.vertices}
    for n in range(max_len + 1):
        for p in g.paths(n):
            by_range[p.dst].append(p)
    out = []
    for v in g.vertices:
        for a, b in itertools.product(by_range[v], repeat=2):
            m = Monomial(a, b)
            if degree is not None and m.degree != degree:
                continue
            if _reducible(spec, m):
                continue
            out.append(m)
    return sorted(out, key=Monomial.sort_key)


def monomial_element(spec: AlgebraSpec, m: Monomial, coeff=None) -> AlgebraElement:
    if _reducible(spec, m):
        return AlgebraElement.make(
            spec, _reduce(spec, {m: coeff if coeff is not None else spec.ring.one},
                          _ring_ops(spec.ring)))
    return AlgebraElement(spec, {m: coeff if coeff is not None else spec.ring.one})


# ---------------------------------------------------------------------------
# D_n filtration and the matricial decomposition


def filtration_level(x: AlgebraElement) -> int:
    """Least n with x in D_n; requires a homogeneous degree-0 element."""
    if x.is_zero:
        return 0
    degs = {m.degree for m in x.terms}
    if degs != {0}:
        raise NotDegreeZero(f"degrees present: {sorted(degs)}")
    return max(len(m.alpha.edges) for m in x.terms)


class BlockStructure:
    """Labels of the D_n standard basis: one block per (i, sink) with i < n
    and one block per vertex at level n, indexed by the paths P(i, v)."""

    def __init__(self, spec: AlgebraSpec, n: int):
        if not spec.is_leavitt:
            raise GralError("the matricial decomposition needs a Leavitt spec")
        if n < 0:
            raise ValueError("filtration level must be nonnegative")
        self.spec = spec
        self.level = n
        g = spec.graph
        keys = [(i, v) for i in range(n) for v in sorted(g.sinks)]
        keys += [(n, v) for v in sorted(g.vertices)]
        self.keys = tuple(keys)
        self.labels = {(i, v): tuple(g.paths(i, v)) for (i, v) in keys}
        self.index = {k: {p: j for j, p in enumerate(lbls)}
                      for k, lbls in self.labels.items()}

    def rank(self) -> int:
        return sum(len(l) ** 2 for l in self.labels.values())

    def __eq__(self, other):
        return (isinstance(other, BlockStructure) and other.spec == self.spec
                and other.level == self.level)

    def __hash__(self):
        return hash((self.spec, self.level))


class MatricialImage:
    """Element of the block-matrix realization of D_n."""

    __slots__ = ("structure", "mats")

    def __init__(self, structure: BlockStructure, mats: dict):
        self.structure = structure
        self.mats = mats  # key -> tuple of row tuples (possibly empty)

    @staticmethod
    def zeros(structure: BlockStructure) -> "MatricialImage":
        ring = structure.spec.ring
        mats = {}
        for k in structure.keys:
            s = len(structure.labels[k])
            mats[k] = tuple(tuple(ring.zero for _ in range(s)) for _ in range(s))
        return MatricialImage(structure, mats)

    @staticmethod
    def one(structure: BlockStructure) -> "MatricialImage":
        ring = structure.spec.ring
        mats = {}
        for k in structure.keys:
            s = len(structure.labels[k])
            mats[k] = tuple(tuple(ring.one if i == j else ring.zero
                                  for j in range(s)) for i in range(s))
        return MatricialImage(structure, mats)

    def block(self, key):
        return self.mats[key]

    def _zip(self, other, fn):
        if self.structure != other.structure:
            raise SpecMismatch("block elements from different structures")
        mats = {}
        for k in self.structure.keys:
            a, b = self.mats[k], other.mats[k]
            mats[k] = tuple(tuple(fn(x, y) for x, y in zip(ra, rb))
                            for ra, rb in zip(a, b))
        return MatricialImage(self.structure, mats)

    def __add__(self, other):
        return self._zip(other, self.structure.spec.ring.add)

    def __sub__(self, other):
        return self._zip(other, self.structure.spec.ring.sub)

    def __neg__(self):
        ring = self.structure.spec.ring
        return MatricialImage(self.structure, {
            k: tuple(tuple(ring.neg(x) for x in row) for row in m)
            for k, m in self.mats.items()})

    def __mul__(self, other):
        if self.structure != other.structure:
            raise SpecMismatch("block elements from different structures")
        ring = self.structure.spec.ring
        mats = {}
        for k in self.structure.keys:
            a, b = self.mats[k], other.mats[k]
            s = len(a)
            out = []
            for i in range(s):
                row = []
                for j in range(s):
                    acc = ring.zero
                    for t in range(s):
                        acc = ring.add(acc, ring.mul(a[i][t], b[t][j]))
                    row.append(acc)
                out.append(tuple(row))
            mats[k] = tuple(out)
        return MatricialImage(self.structure, mats)

    def __eq__(self, other):
        return (isinstance(other, MatricialImage)
                and other.structure == self.structure and other.mats == self.mats)

    def is_idempotent(self) -> bool:
        return self * self == self

    def __repr__(self):
        spec = self.structure.spec
        ring = spec.ring
        parts = []
        for k in self.structure.keys:
            m = self.mats[k]
            if any(x != ring.zero for row in m for x in row):
                parts.append(f"block{k}={[[ring.format_element(x) for x in row] for row in m]}")
        return "MatricialImage(" + ("; ".join(parts) if parts else "0") + ")"


def _expand_to_level(spec: AlgebraSpec, terms: dict, n: int) -> dict:
    """Rewrite via v = sum f f* at regular range vertices until every
    monomial has length n or ends at a sink."""
    g = spec.graph
    ring = spec.ring
    out = {}
    work = list(terms.items())
    while work:
        m, c = work.pop()
        l = len(m.alpha.edges)
        r = m.alpha.dst
        if l >= n or not g.out_edges(r):
            c2 = ring.add(out.get(m, ring.zero), c)
            if c2 == ring.zero:
                out.pop(m, None)
            else:
                out[m] = c2
            continue
        for e in g.out_edges(r):
            work.append((Monomial(_append(m.alpha, e), _append(m.beta, e)), c))
    return out


def matricial_decompose(x: AlgebraElement, n: int) -> MatricialImage:
    """Image of x in the D_n block realization (Leavitt specs only)."""
    spec = x.spec
    structure = BlockStructure(spec, n)
    level = filtration_level(x)
    if level > n:
        raise NotInDn(f"element has filtration level {level} > {n}")
    ring = spec.ring
    img = MatricialImage.zeros(structure)
    mats = {k: [list(row) for row in m] for k, m in img.mats.items()}
    for m, c in _expand_to_level(spec, x.terms, n).items():
        l = len(m.alpha.edges)
        key = (l, m.alpha.dst)
        idx = structure.index[key]
        i, j = idx[m.alpha], idx[m.beta]
        mats[key][i][j] = ring.add(mats[key][i][j], c)
    return MatricialImage(structure, {k: tuple(tuple(row) for row in m)
                                      for k, m in mats.items()})


def matricial_lift(image: MatricialImage) -> AlgebraElement:
    """Two-sided inverse of matricial_decompose on images."""
    structure = image.structure
    spec = structure.spec
    ring = spec.ring
    raw = {}
    for k in structure.keys:
        labels = structure.labels[k]
        m = image.mats[k]
        for i, a in enumerate(labels):
            for j, b in enumerate(labels):
                c = m[i][j]
                if c == ring.zero:
                    continue
                mono = Monomial(a, b)
                raw[mono] = ring.add(raw.get(mono, ring.zero), c)
    return AlgebraElement.make(spec, _reduce(spec, raw, _ring_ops(ring)))


def dn_rank(spec: AlgebraSpec, n: int) -> int:
    """Rank of D_n from the block formula."""
    return BlockStructure(spec, n).rank()


def dn_reduced_basis(spec: AlgebraSpec, n: int):
    """Reduced monomials spanning D_n (degree 0, lengths <= n)."""
    return reduced_monomials(spec, degree=0, max_len=n)


# ---------------------------------------------------------------------------
# JSON interface


def element_to_terms(x: AlgebraElement):
    ring = x.spec.ring
    out = []
    for m in x.support():
        out.append({
            "coeff": ring.encode(x.terms[m]),
            "alpha": _path_to_json(m.alpha),
            "beta": _path_to_json(m.beta),
        })
    return out


def _path_to_json(p: Path):
    if not p.edges:
        return {"vertex": p.src}
    return list(p.edges)


def _path_from_json(g: Graph, obj) -> Path:
    if isinstance(obj, dict):
        return g.vertex_path(obj["vertex"])
    return g.make_path(obj)


def element_from_terms(spec: AlgebraSpec, terms) -> AlgebraElement:
    ring = spec.ring
    raw = {}
    for t in terms:
        a = _path_from_json(spec.graph, t["alpha"])
        b = _path_from_json(spec.graph, t["beta"])
        if a.dst != b.dst:
            raise GralError(f"monomial ranges differ: {a} vs {b}")
        c = ring.decode(t["coeff"])
        m = Monomial(a, b)
        raw[m] = ring.add(raw.get(m, ring.zero), c)
    return AlgebraElement.make(spec, _reduce(spec, raw, _ring_ops(ring)))
