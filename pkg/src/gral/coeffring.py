"""Finite unital coefficient rings with exact arithmetic.

Three kinds of ring are supported: modular Z/n, finite products, and
explicit addition/multiplication tables.  Elements are plain Python
values (ints for modular and table rings, tuples for products) and all
operations go through the owning :class:`Ring` handle.  Handles are
immutable after construction, so everything here is safe to share.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import AxiomViolation, SearchCapExceeded

DEFAULT_SEARCH_CAP = 10**6


def search_cap() -> int:
    """Exhaustive-search state cap; GRAL_SEARCH_CAP overrides the default."""
    raw = os.environ.get("GRAL_SEARCH_CAP")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_SEARCH_CAP


class Ring:
    """Common interface of the three ring kinds."""

    kind = "abstract"
    order: int

    def elements(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        """Multiplicative identity, or None for a relaxed (non-unital) table."""
        raise NotImplementedError

    def scale_int(self, k: int, a):
        """k.a for an integer k (repeated addition, sign via neg)."""
        if k < 0:
            return self.neg(self.scale_int(-k, a))
        acc = self.zero
        add = self.add
        for _ in range(k):
            acc = add(acc, a)
        return acc

    def index(self, a) -> int:
        return self.elements().index(a)

    def encode(self, a):
        """JSON-compatible encoding of an element."""
        return a

    def decode(self, obj):
        a = self._decode(obj)
        if a not in self._element_set():
            raise ValueError(f"not an element of {self.describe()}: {obj!r}")
        return a

    def _decode(self, obj):
        return obj

    def _element_set(self):
        cached = getattr(self, "_elt_set", None)
        if cached is None:
            cached = set(self.elements())
            self._elt_set = cached
        return cached

    def describe(self) -> str:
        raise NotImplementedError

    def format_element(self, a) -> str:
        return str(a)

    def is_field(self) -> bool:
        cached = getattr(self, "_field_cache", None)
        if cached is None:
            cached = all(
                any(self.mul(b, a) == self.one and self.mul(a, b) == self.one
                    for b in self.elements())
                for a in self.elements() if a != self.zero
            ) and self.one is not None
            self._field_cache = cached
        return cached

    def has_left_inverse(self, a) -> bool:
        one = self.one
        return any(self.mul(b, a) == one for b in self.elements())


class ModularRing(Ring):
    kind = "mod"

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("modulus must be at least 2")
        self.n = n
        self.order = n
        self._elems = tuple(range(n))

    def elements(self):
        return self._elems

    def add(self, a, b):
        return (a + b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return (-a) % self.n

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def scale_int(self, k, a):
        return (k * a) % self.n

    def index(self, a):
        return a

    def describe(self):
        return f"Z/{self.n}"

    def __eq__(self, other):
        return isinstance(other, ModularRing) and other.n == self.n

    def __hash__(self):
        return hash(("mod", self.n))


class ProductRing(Ring):
    kind = "product"

    def __init__(self, factors: Sequence[Ring]):
        if not factors:
            raise ValueError("product ring needs at least one factor")
        self.factors = tuple(factors)
        self.order = math.prod(f.order for f in self.factors)
        self._elems = None

    def elements(self):
        if self._elems is None:
            self._elems = tuple(itertools.product(*(f.elements() for f in self.factors)))
        return self._elems

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    @property
    def zero(self):
        return tuple(f.zero for f in self.factors)

    @property
    def one(self):
        return tuple(f.one for f in self.factors)

    def scale_int(self, k, a):
        return tuple(f.scale_int(k, x) for f, x in zip(self.factors, a))

    def encode(self, a):
        return [f.encode(x) for f, x in zip(self.factors, a)]

    def _decode(self, obj):
        if not isinstance(obj, (list, tuple)) or len(obj) != len(self.factors):
            raise ValueError(f"bad product element: {obj!r}")
        return tuple(f.decode(x) for f, x in zip(self.factors, obj))

    def describe(self):
        return " x ".join(f.describe() for f in self.factors)

    def format_element(self, a):
        return "(" + ",".join(f.format_element(x) for f, x in zip(self.factors, a)) + ")"

    def __eq__(self, other):
        return isinstance(other, ProductRing) and other.factors == self.factors

    def __hash__(self):
        return hash(("product", self.factors))


class TableRing(Ring):
    """Ring given by explicit addition and multiplication tables.

    Axioms are validated at load.  With require_one=False a table without a
    designated identity is accepted (only used for grading fixtures).
    """

    kind = "table"

    def __init__(self, add_table, mul_table, zero: int, one: Optional[int],
                 require_one: bool = True):
        k = len(add_table)
        self.k = k
        self.order = k
        self.add_table = tuple(tuple(row) for row in add_table)
        self.mul_table = tuple(tuple(row) for row in mul_table)
        self._zero = zero
        self._one = one
        self._elems = tuple(range(k))
        self._validate(require_one)

    def _validate(self, require_one: bool):
        k = self.k
        rng = range(k)
        for name, table in (("add", self.add_table), ("mul", self.mul_table)):
            if len(table) != k or any(len(row) != k for row in table):
                raise AxiomViolation(f"{name}-total", None)
            for a in rng:
                for b in rng:
                    if not 0 <= table[a][b] < k:
                        raise AxiomViolation(f"{name}-closure", (a, b))
        add, mul, z = self.add_table, self.mul_table, self._zero
        if not 0 <= z < k:
            raise AxiomViolation("zero-element", z)
        for a in rng:
            if add[a][z] != a or add[z][a] != a:
                raise AxiomViolation("add-zero", a)
            if not any(add[a][b] == z for b in rng):
                raise AxiomViolation("add-inverse", a)
            for b in rng:
                if add[a][b] != add[b][a]:
                    raise AxiomViolation("add-commutative", (a, b))
                for c in rng:
                    if add[add[a][b]][c] != add[a][add[b][c]]:
                        raise AxiomViolation("add-associative", (a, b, c))
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                        raise AxiomViolation("mul-associative", (a, b, c))
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                        raise AxiomViolation("distributive-left", (a, b, c))
                    if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]]:
                        raise AxiomViolation("distributive-right", (a, b, c))
        if require_one or self._one is not None:
            o = self._one
            if o is None or not 0 <= o < k:
                raise AxiomViolation("one-element", o)
            if o == z:
                raise AxiomViolation("one-nonzero", o)
            for a in rng:
                if mul[a][o] != a or mul[o][a] != a:
                    raise AxiomViolation("one-identity", a)

    def elements(self):
        return self._elems

    def add(self, a, b):
        return self.add_table[a][b]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def neg(self, a):
        for b in self._elems:
            if self.add_table[a][b] == self._zero:
                return b
        raise AxiomViolation("add-inverse", a)

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def index(self, a):
        return a

    def describe(self):
        return f"table({self.k})"

    def format_element(self, a):
        return f"t{a}"

    def __eq__(self, other):
        return (isinstance(other, TableRing) and other.add_table == self.add_table
                and other.mul_table == self.mul_table and other._zero == self._zero
                and other._one == self._one)

    def __hash__(self):
        return hash(("table", self.add_table, self.mul_table, self._zero, self._one))


def ring_make(spec) -> Ring:
    """Build a ring handle from a parsed spec dict.

    Schema: {"kind":"mod","n":4} | {"kind":"product","factors":[...]} |
    {"kind":"table","size":k,"zero":i,"one":j,"add":[[...]],"mul":[[...]]}.
    """
    kind = spec.get("kind")
    if kind == "mod":
        return ModularRing(int(spec["n"]))
    if kind == "product":
        return ProductRing([ring_make(f) for f in spec["factors"]])
    if kind == "table":
        size = int(spec["size"])
        add, mul = spec["add"], spec["mul"]
        if len(add) != size or len(mul) != size:
            raise AxiomViolation("table-size", size)
        return TableRing(add, mul, int(spec["zero"]), int(spec["one"]))
    raise ValueError(f"unknown ring kind: {kind!r}")


def ring_spec(ring: Ring):
    """Inverse of ring_make for the serializable kinds."""
    if isinstance(ring, ModularRing):
        return {"kind": "mod", "n": ring.n}
    if isinstance(ring, ProductRing):
        return {"kind": "product", "factors": [ring_spec(f) for f in ring.factors]}
    if isinstance(ring, TableRing):
        return {"kind": "table", "size": ring.k, "zero": ring.zero, "one": ring.one,
                "add": [list(r) for r in ring.add_table],
                "mul": [list(r) for r in ring.mul_table]}
    raise ValueError(f"cannot serialize {ring!r}")


# ---------------------------------------------------------------------------
# von Neumann regularity


@dataclass(frozen=True)
class VnrVerdict:
    regular: bool
    witnesses: Optional[tuple] = None       # ((a, y), ...) when regular
    counterexample: Optional[object] = None  # least a without a witness


def vnr_witness(ring: Ring, a):
    """First y in enumeration order with a = a.y.a, or None."""
    for y in ring.elements():
        if ring.mul(ring.mul(a, y), a) == a:
            return y
    return None


def is_vnr(ring: Ring) -> VnrVerdict:
    cached = getattr(ring, "_vnr_cache", None)
    if cached is not None:
        return cached
    table = []
    verdict = None
    for a in ring.elements():
        y = vnr_witness(ring, a)
        if y is None:
            verdict = VnrVerdict(False, None, a)
            break
        table.append((a, y))
    if verdict is None:
        verdict = VnrVerdict(True, tuple(table), None)
    ring._vnr_cache = verdict
    return verdict


# ---------------------------------------------------------------------------
# Linear systems
#
# A constraint is (terms, rhs) where terms is a sequence of (left, var, right)
# triples meaning sum(left . x_var . right) = rhs; left/right may be None
# (treated as "no factor", which also covers non-unital table rings).


def solve_linear_system(ring: Ring, constraints, variables=None):
    """One solution as {var: element}, or None if certifiably absent.

    Modular and product rings are solved exactly (CRT into prime powers,
    elimination with unit pivots and p-divisible recursion); table rings
    fall back to capped exhaustive search.
    """
    varlist = _collect_vars(constraints, variables)
    if isinstance(ring, ProductRing):
        assignment = {}
        per_factor = []
        for i, factor in enumerate(ring.factors):
            proj = [
                ([(None if l is None else l[i], v, None if r is None else r[i])
                  for (l, v, r) in terms], rhs[i])
                for terms, rhs in constraints
            ]
            sol = solve_linear_system(factor, proj, varlist)
            if sol is None:
                return None
            per_factor.append(sol)
        for v in varlist:
            assignment[v] = tuple(sol[v] for sol in per_factor)
        return assignment
    if isinstance(ring, ModularRing):
        n = ring.n
        rows, rhs = _fold_modular(ring, constraints, varlist)
        sol = _solve_mod(rows, rhs, len(varlist), n)
        if sol is None:
            return None
        return dict(zip(varlist, sol))
    return _solve_exhaustive(ring, constraints, varlist)


def _collect_vars(constraints, variables):
    if variables is not None:
        return list(variables)
    seen = []
    have = set()
    for terms, _ in constraints:
        for _, v, _ in terms:
            if v not in have:
                have.add(v)
                seen.append(v)
    return seen


def _fold_modular(ring, constraints, varlist):
    n = ring.n
    pos = {v: i for i, v in enumerate(varlist)}
    rows, rhs = [], []
    for terms, b in constraints:
        row = [0] * len(varlist)
        for l, v, r in terms:
            c = (1 if l is None else l) * (1 if r is None else r)
            row[pos[v]] = (row[pos[v]] + c) % n
        rows.append(row)
        rhs.append(b % n)
    return rows, rhs


def _prime_powers(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def _solve_mod(rows, rhs, nvars, n):
    if not rows or nvars == 0:
        if any(b % n != 0 for b in rhs):
            return None
        return [0] * nvars
    parts = _prime_powers(n)
    residues = []
    for p, e in parts:
        q = p**e
        sol = _solve_prime_power([r[:] for r in rows], list(rhs), p, e)
        if sol is None:
            return None
        residues.append((q, sol))
    out = []
    for i in range(nvars):
        x, mod = 0, 1
        for q, sol in residues:
            x = _crt_pair(x, mod, sol[i] % q, q)
            mod *= q
        out.append(x % n)
    return out


def _crt_pair(a, m, b, q):
    # m, q coprime
    inv = pow(m, -1, q)
    return a + m * ((b - a) * inv % q)


def _solve_prime_power(rows, rhs, p, e):
    q = p**e
    nvars = len(rows[0]) if rows else 0
    rows = [[x % q for x in row] for row in rows]
    rhs = [b % q for b in rhs]
    # eliminate with unit pivots first
    pivots = []  # (row index, var index)
    used_rows, used_cols = set(), set()
    while True:
        found = None
        for i in range(len(rows)):
            if i in used_rows:
                continue
            for j in range(nvars):
                if j in used_cols:
                    continue
                if rows[i][j] % p != 0:
                    found = (i, j)
                    break
            if found:
                break
        if not found:
            break
        i, j = found
        inv = pow(rows[i][j], -1, q)
        rows[i] = [(x * inv) % q for x in rows[i]]
        rhs[i] = (rhs[i] * inv) % q
        for k in range(len(rows)):
            if k != i and rows[k][j] % q != 0:
                f = rows[k][j]
                rows[k] = [(x - f * y) % q for x, y in zip(rows[k], rows[i])]
                rhs[k] = (rhs[k] - f * rhs[i]) % q
        used_rows.add(i)
        used_cols.add(j)
        pivots.append((i, j))
    # remaining rows have all entries divisible by p
    rem = [i for i in range(len(rows)) if i not in used_rows]
    sol = [0] * nvars
    if rem:
        live = [j for j in range(nvars) if j not in used_cols]
        if any(rhs[i] % p != 0 for i in rem):
            return None
        if e == 1:
            pass  # 0 = 0 rows; free vars stay 0
        else:
            sub_rows = [[rows[i][j] // p for j in live] for i in rem]
            sub_rhs = [rhs[i] // p for i in rem]
            sub = _solve_prime_power(sub_rows, sub_rhs, p, e - 1)
            if sub is None:
                return None
            for j, val in zip(live, sub):
                sol[j] = val % q
    # back-substitute pivots (rows are fully reduced, so direct read-off)
    for i, j in pivots:
        acc = rhs[i]
        for jj in range(nvars):
            if jj != j and rows[i][jj]:
                acc = (acc - rows[i][jj] * sol[jj]) % q
        sol[j] = acc % q
    # re-check (cheap, guards the p-divisible lift)
    for row, b in zip(rows, rhs):
        if sum(c * x for c, x in zip(row, sol)) % q != b % q:
            return None
    return sol


def _solve_exhaustive(ring: Ring, constraints, varlist):
    cap = search_cap()
    states = ring.order ** len(varlist) if varlist else 1
    if states > cap:
        raise SearchCapExceeded(states, cap, "linear solve over table ring")
    elems = ring.elements()
    for combo in itertools.product(elems, repeat=len(varlist)):
        assignment = dict(zip(varlist, combo))
        if _check_assignment(ring, constraints, assignment):
            return assignment
    return None


def _check_assignment(ring, constraints, assignment):
    for terms, rhs in constraints:
        acc = ring.zero
        for l, v, r in terms:
            t = assignment[v]
            if l is not None:
                t = ring.mul(l, t)
            if r is not None:
                t = ring.mul(t, r)
            acc = ring.add(acc, t)
        if acc != rhs:
            return False
    return True


def kernel_generators(ring: Ring, constraints, variables):
    """Generators of the solution module of a homogeneous system.

    Used for injectivity testing over rings with zero divisors, where rank
    arguments are unavailable.
    """
    varlist = list(variables)
    if isinstance(ring, ProductRing):
        gens = []
        for i, factor in enumerate(ring.factors):
            proj = [
                ([(None if l is None else l[i], v, None if r is None else r[i])
                  for (l, v, r) in terms], rhs[i])
                for terms, rhs in constraints
            ]
            for g in kernel_generators(factor, proj, varlist):
                gens.append({
                    v: tuple(g[v] if k == i else f.zero
                             for k, f in enumerate(ring.factors))
                    for v in varlist
                })
        return gens
    if isinstance(ring, ModularRing):
        n = ring.n
        rows, rhs = _fold_modular(ring, constraints, varlist)
        if any(b % n for b in rhs):
            raise ValueError("kernel_generators needs a homogeneous system")
        gens = []
        for vec in _kernel_mod(rows, len(varlist), n):
            if any(vec):
                gens.append(dict(zip(varlist, vec)))
        return gens
    # table rings: enumerate all solutions (capped)
    cap = search_cap()
    states = ring.order ** len(varlist) if varlist else 1
    if states > cap:
        raise SearchCapExceeded(states, cap, "kernel search over table ring")
    gens = []
    for combo in itertools.product(ring.elements(), repeat=len(varlist)):
        assignment = dict(zip(varlist, combo))
        if any(x != ring.zero for x in combo) and _check_assignment(ring, constraints, assignment):
            gens.append(assignment)
    return gens


def _kernel_mod(rows, nvars, n):
    """Generators of {x : A x = 0 mod n} via integer diagonalization."""
    mat = [row[:] for row in rows] or [[0] * nvars]
    v = [[int(i == j) for j in range(nvars)] for i in range(nvars)]  # column ops
    m = len(mat)
    rank_pos = 0
    diag = []
    r, c = 0, 0
    while r < m and c < nvars:
        # find the minimal nonzero entry in the remaining submatrix
        best = None
        for i in range(r, m):
            for j in range(c, nvars):
                if mat[i][j] and (best is None or abs(mat[i][j]) < abs(mat[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        mat[r], mat[bi] = mat[bi], mat[r]
        for row in mat:
            row[c], row[bj] = row[bj], row[c]
        v[c], v[bj] = v[bj], v[c]
        # clear row and column by repeated reduction
        dirty = True
        while dirty:
            dirty = False
            for i in range(r + 1, m):
                if mat[i][c]:
                    f = mat[i][c] // mat[r][c]
                    for j in range(c, nvars):
                        mat[i][j] -= f * mat[r][j]
                    if mat[i][c]:
                        mat[r], mat[i] = mat[i], mat[r]
                        dirty = True
            for j in range(c + 1, nvars):
                if mat[r][j]:
                    f = mat[r][j] // mat[r][c]
                    for i in range(m):
                        mat[i][j] -= f * mat[i][c]
                    for k in range(nvars):
                        v[j][k] -= f * v[c][k]
                    if mat[r][j]:
                        for i in range(m):
                            mat[i][c], mat[i][j] = mat[i][j], mat[i][c]
                        v[c], v[j] = v[j], v[c]
                        dirty = True
        diag.append(mat[r][c])
        r += 1
        c += 1
        rank_pos += 1
    gens = []
    for j in range(nvars):
        d = diag[j] if j < len(diag) else 0
        t = n // math.gcd(d, n)
        if t % n == 0:
            continue
        vec = tuple((t * v[j][k]) % n for k in range(nvars))
        gens.append(vec)
    return gens


# ---------------------------------------------------------------------------
# Matrices


@dataclass(frozen=True)
class MatrixOverRing:
    ring: Ring
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("matrix dimensions must be positive")

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0])

    @staticmethod
    def from_lists(ring, rows):
        return MatrixOverRing(ring, tuple(tuple(r) for r in rows))


def mat_mul(a: MatrixOverRing, b: MatrixOverRing) -> MatrixOverRing:
    ring = a.ring
    if a.cols != b.rows:
        raise ValueError("matrix shape mismatch")
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = ring.zero
            for k in range(a.cols):
                acc = ring.add(acc, ring.mul(a.entries[i][k], b.entries[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return MatrixOverRing(ring, tuple(out))


def matrix_vnr_witness(a: MatrixOverRing) -> Optional[MatrixOverRing]:
    """Y with A.Y.A = A, or None (certified absence).

    Field components get an O(n^3) generalized inverse; modular rings split
    by CRT; everything else goes through solve_linear_system.  The result is
    re-verified before returning.
    """
    ring = a.ring
    y = _matrix_witness_dispatch(a)
    if y is not None and mat_mul(mat_mul(a, y), a) != a:
        raise ArithmeticError("matrix witness failed re-verification")
    return y


def _matrix_witness_dispatch(a: MatrixOverRing):
    ring = a.ring
    if isinstance(ring, ProductRing):
        comps = []
        for i, factor in enumerate(ring.factors):
            sub = MatrixOverRing(factor, tuple(tuple(x[i] for x in row) for row in a.entries))
            y = _matrix_witness_dispatch(sub)
            if y is None:
                return None
            comps.append(y)
        rows = a.cols
        cols = a.rows
        return MatrixOverRing(ring, tuple(
            tuple(tuple(comps[k].entries[i][j] for k in range(len(ring.factors)))
                  for j in range(cols))
            for i in range(rows)))
    if isinstance(ring, ModularRing):
        parts = _prime_powers(ring.n)
        if len(parts) == 1 and parts[0][1] > 1:
            return _matrix_witness_solve(a)
        comps, mods = [], []
        for p, e in parts:
            q = p**e
            sub = MatrixOverRing(ModularRing(q),
                                 tuple(tuple(x % q for x in row) for row in a.entries))
            y = (_field_generalized_inverse(sub) if e == 1
                 else _matrix_witness_solve(sub))
            if y is None:
                return None
            comps.append(y)
            mods.append(q)
        out = []
        for i in range(a.cols):
            row = []
            for j in range(a.rows):
                x, mod = 0, 1
                for y, q in zip(comps, mods):
                    x = _crt_pair(x, mod, y.entries[i][j], q)
                    mod *= q
                row.append(x % ring.n)
            out.append(tuple(row))
        return MatrixOverRing(ring, tuple(out))
    if ring.is_field():
        return _field_generalized_inverse(a)
    return _matrix_witness_solve(a)


def _matrix_witness_solve(a: MatrixOverRing):
    ring = a.ring
    m, n = a.rows, a.cols
    constraints = []
    for i in range(m):
        for j in range(m):
            terms = []
            for k in range(n):
                for l in range(m):
                    terms.append((a.entries[i][k], (k, l), a.entries[l][j]))
            constraints.append((terms, a.entries[i][j]))
    variables = [(k, l) for k in range(n) for l in range(m)]
    sol = solve_linear_system(ring, constraints, variables)
    if sol is None:
        return None
    return MatrixOverRing(ring, tuple(
        tuple(sol[(k, l)] for l in range(m)) for k in range(n)))


def _field_generalized_inverse(a: MatrixOverRing):
    """Full-rank decomposition E.A.F = [[I,0],[0,0]]; Y = F.J^T.E."""
    ring = a.ring
    m, n = a.rows, a.cols
    mat = [list(row) for row in a.entries]
    e = [[ring.one if i == j else ring.zero for j in range(m)] for i in range(m)]
    f = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
    rank = 0
    for _ in range(min(m, n)):
        pivot = None
        for i in range(rank, m):
            for j in range(rank, n):
                if mat[i][j] != ring.zero:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        pi, pj = pivot
        mat[rank], mat[pi] = mat[pi], mat[rank]
        e[rank], e[pi] = e[pi], e[rank]
        for row in mat:
            row[rank], row[pj] = row[pj], row[rank]
        for row in f:
            row[rank], row[pj] = row[pj], row[rank]
        inv = next(b for b in ring.elements() if ring.mul(b, mat[rank][rank]) == ring.one)
        mat[rank] = [ring.mul(inv, x) for x in mat[rank]]
        e[rank] = [ring.mul(inv, x) for x in e[rank]]
        for i in range(m):
            if i != rank and mat[i][rank] != ring.zero:
                c = mat[i][rank]
                mat[i] = [ring.sub(x, ring.mul(c, y)) for x, y in zip(mat[i], mat[rank])]
                e[i] = [ring.sub(x, ring.mul(c, y)) for x, y in zip(e[i], e[rank])]
        for j in range(n):
            if j != rank and mat[rank][j] != ring.zero:
                c = mat[rank][j]
                for i in range(m):
                    mat[i][j] = ring.sub(mat[i][j], ring.mul(mat[i][rank], c))
                for i in range(n):
                    f[i][j] = ring.sub(f[i][j], ring.mul(f[i][rank], c))
        rank += 1
    # Y = F . J^T . E where J^T is n x m with identity block of size rank
    jt_e = [[e[i][j] if i < rank else ring.zero for j in range(m)] for i in range(n)]
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ring.zero
            for k in range(n):
                acc = ring.add(acc, ring.mul(f[i][k], jt_e[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return MatrixOverRing(ring, tuple(out))


# ---------------------------------------------------------------------------
# Radical and semiprimeness


def jacobson_radical(ring: Ring):
    """{x : 1 - yx has a left inverse for all y}, in enumeration order."""
    cap = search_cap()
    states = ring.order**2
    if states > cap:
        raise SearchCapExceeded(states, cap, "radical enumeration")
    one = ring.one
    elems = ring.elements()
    invertible = set()
    for u in elems:
        if any(ring.mul(z, u) == one for z in elems):
            invertible.add(u)
    radical = [x for x in elems
               if all(ring.sub(one, ring.mul(y, x)) in invertible for y in elems)]
    rad_set = set(radical)
    for x in radical:
        for y in radical:
            assert ring.add(x, y) in rad_set
        for y in elems:
            assert ring.mul(y, x) in rad_set and ring.mul(x, y) in rad_set
    return radical


@dataclass(frozen=True)
class SemiprimeVerdict:
    semiprime: bool
    witness: Optional[object] = None  # a != 0 with aRa = 0


def is_semiprime_ring(ring: Ring) -> SemiprimeVerdict:
    cap = search_cap()
    if ring.order**2 > cap:
        raise SearchCapExceeded(ring.order**2, cap, "semiprime enumeration")
    for a in ring.elements():
        if a == ring.zero:
            continue
        if all(ring.mul(ring.mul(a, r), a) == ring.zero for r in ring.elements()):
            return SemiprimeVerdict(False, a)
    return SemiprimeVerdict(True, None)
