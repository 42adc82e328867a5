"""Exact group backends.

Elements are plain hashable tuples/ints so they can be used directly as
keys of visited sets in the enumeration loops:

* integer-affine element: ``(linear, shift)`` where ``linear`` is the
  row-major flattened integer matrix and ``shift`` the translation vector,
  representing ``x -> A x + b``;
* finite-table element: the ``int`` index into the multiplication table;
* direct-product element: ``tuple`` of component elements;
* free-product element: ``tuple`` of syllables ``(factor_index, element)``,
  adjacent syllables in different factors, no syllable trivial.

Python ints are arbitrary precision, so affine arithmetic never wraps.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial, lcm
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from ..errors import SpecError

# Sentinel returned by ``solve_power`` when every exponent works.
ALL = "all"


class Backend:
    kind = "abstract"

    def identity(self):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def parse(self, data: Any):
        raise NotImplementedError

    def dump(self, x) -> Any:
        raise NotImplementedError

    def power(self, x, k: int):
        result = self.identity()
        base = x
        while k > 0:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    # Hooks for the exact periodicity solver.  ``power_structure`` returns the
    # smallest K such that x**K lies in the "unipotent" part where
    # ``solve_power`` can decide V**q == target exactly, or None.
    def power_structure(self, x, cap: int = 64) -> Optional[int]:
        return None

    def solve_power(self, v, target):
        raise NotImplementedError

    def power_hits(self, g, targets: Sequence[Any]) -> List[Optional[bool]]:
        """For each target, whether ``g**m == target`` for some ``m >= 1``.

        ``None`` marks targets this backend cannot decide exactly.
        """
        k = self.power_structure(g)
        if k is None:
            return [None] * len(targets)
        v = self.power(g, k)
        g_inv = self.inv(g)
        out: List[Optional[bool]] = [False] * len(targets)
        shift = self.identity()  # g**(-r)
        for r in range(k):
            for idx, t in enumerate(targets):
                if out[idx]:
                    continue
                qs = self.solve_power(v, self.mul(shift, t))
                if qs == ALL or any(q * k + r >= 1 for q in qs):
                    out[idx] = True
            shift = self.mul(shift, g_inv)
        return out


def _matmul(a: Sequence[int], b: Sequence[int], d: int) -> Tuple[int, ...]:
    return tuple(
        sum(a[i * d + k] * b[k * d + j] for k in range(d))
        for i in range(d)
        for j in range(d)
    )


def _matvec(a: Sequence[int], v: Sequence[int], d: int) -> Tuple[int, ...]:
    return tuple(sum(a[i * d + k] * v[k] for k in range(d)) for i in range(d))


def _integer_inverse(a: Sequence[int], d: int) -> Tuple[int, ...]:
    m = [[Fraction(a[i * d + j]) for j in range(d)] + [Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    for col in range(d):
        piv = next((r for r in range(col, d) if m[r][col] != 0), None)
        if piv is None:
            raise SpecError("affine linear part is singular")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(d):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    out = []
    for i in range(d):
        for j in range(d):
            x = m[i][d + j]
            if x.denominator != 1:
                raise SpecError("affine linear part is not unimodular over the integers")
            out.append(int(x))
    return tuple(out)


class AffineBackend(Backend):
    """Integer affine maps x -> A x + b in dimension ``dim``; product is composition."""

    kind = "affine"

    def __init__(self, dim: int):
        if dim < 1:
            raise SpecError("affine dimension must be >= 1")
        self.dim = dim
        self._eye = tuple(int(i == j) for i in range(dim) for j in range(dim))
        self._id = (self._eye, (0,) * dim)

    def identity(self):
        return self._id

    def mul(self, x, y):
        d = self.dim
        a1, b1 = x
        a2, b2 = y
        if d == 1:
            return ((a1[0] * a2[0],), (a1[0] * b2[0] + b1[0],))
        if a1 == self._eye:
            return (a2, tuple(p + q for p, q in zip(b2, b1)))
        return (_matmul(a1, a2, d), tuple(p + q for p, q in zip(_matvec(a1, b2, d), b1)))

    def inv(self, x):
        a, b = x
        ai = _integer_inverse(a, self.dim)
        return (ai, tuple(-v for v in _matvec(ai, b, self.dim)))

    def parse(self, data):
        try:
            rows = data["matrix"]
            shift = data["shift"]
        except (KeyError, TypeError) as exc:
            raise SpecError(f"affine element needs 'matrix' and 'shift': {data!r}") from exc
        d = self.dim
        if len(rows) != d or any(len(r) != d for r in rows) or len(shift) != d:
            raise SpecError(f"affine element has wrong shape for dimension {d}")
        flat = tuple(int(v) for r in rows for v in r)
        _integer_inverse(flat, d)
        return (flat, tuple(int(v) for v in shift))

    def dump(self, x):
        a, b = x
        d = self.dim
        return {"matrix": [list(a[i * d:(i + 1) * d]) for i in range(d)], "shift": list(b)}

    def translation_of_origin(self, x) -> Tuple[int, ...]:
        return x[1]

    # -- exact power solving -------------------------------------------------
    def _augmented(self, x) -> List[List[int]]:
        d = self.dim
        a, b = x
        m = [[a[i * d + j] for j in range(d)] + [b[i]] for i in range(d)]
        m.append([0] * d + [1])
        return m

    def _is_unipotent(self, a: Sequence[int]) -> bool:
        d = self.dim
        n = tuple(a[k] - self._eye[k] for k in range(d * d))
        p = n
        for _ in range(d - 1):
            p = _matmul(p, n, d)
        return not any(p)

    def power_structure(self, x, cap: int = 64) -> Optional[int]:
        a = x[0]
        p = a
        for k in range(1, cap + 1):
            if self._is_unipotent(p):
                return k
            p = _matmul(p, a, self.dim)
        return None

    def solve_power(self, v, target):
        """Exponents q >= 0 with v**q == target, for unipotent-linear ``v``.

        The augmented matrix U of v is unipotent, so U**q = sum_k C(q,k) N**k
        with N = U - I nilpotent; every entry is a polynomial in q.
        """
        if v == self._id:
            return ALL if target == self._id else set()
        if v[0] == self._eye:
            # pure translation: v**q has shift q*b
            if target[0] != self._eye:
                return set()
            b, t = v[1], target[1]
            i = next(i for i, x in enumerate(b) if x)
            q, rem = divmod(t[i], b[i])
            if rem or q < 0 or any(q * x != y for x, y in zip(b, t)):
                return set()
            return {q}
        size = self.dim + 1
        u = self._augmented(v)
        t = self._augmented(target)
        n = [[u[i][j] - int(i == j) for j in range(size)] for i in range(size)]
        powers = [[[int(i == j) for j in range(size)] for i in range(size)]]
        while True:
            last = powers[-1]
            nxt = [[sum(last[i][k] * n[k][j] for k in range(size)) for j in range(size)] for i in range(size)]
            if not any(any(r) for r in nxt):
                break
            powers.append(nxt)
        if len(powers) == 1:
            return ALL if t == powers[0] else set()
        deg = len(powers) - 1

        def at(q: int) -> List[List[int]]:
            return [[sum(comb(q, k) * powers[k][i][j] for k in range(deg + 1)) for j in range(size)] for i in range(size)]

        # pick an entry whose polynomial is non-constant and bound its roots
        best = None
        for i in range(size):
            for j in range(size):
                if any(powers[k][i][j] for k in range(1, deg + 1)):
                    best = (i, j)
                    break
            if best:
                break
        i, j = best
        # the same entry as a rational polynomial in q, monomial basis
        poly = [Fraction(0)] * (deg + 1)
        poly[0] -= t[i][j]
        for k in range(deg + 1):
            c = powers[k][i][j]
            if not c:
                continue
            # C(q,k) = q(q-1)...(q-k+1)/k!
            falling = [Fraction(1)]
            for r in range(k):
                nxt = [Fraction(0)] * (len(falling) + 1)
                for e, coef in enumerate(falling):
                    nxt[e + 1] += coef
                    nxt[e] -= r * coef
                falling = nxt
            for e, coef in enumerate(falling):
                poly[e] += c * coef / factorial(k)
        while len(poly) > 1 and poly[-1] == 0:
            poly.pop()
        if len(poly) == 2:
            q = -poly[0] / poly[1]
            return {int(q)} if q.denominator == 1 and q >= 0 and at(int(q)) == t else set()
        lead = abs(poly[-1])
        bound = 1 + int(max((abs(c) / lead for c in poly[:-1]), default=Fraction(0)))
        return {q for q in range(0, bound + 1) if at(q) == t}


class TableBackend(Backend):
    """Finite group given by an explicit multiplication table."""

    kind = "table"

    def __init__(self, table: Sequence[Sequence[int]]):
        n = len(table)
        if n == 0 or any(len(r) != n for r in table):
            raise SpecError("finite table must be a non-empty square array")
        t = tuple(tuple(int(v) for v in r) for r in table)
        if any(not 0 <= v < n for r in t for v in r):
            raise SpecError("finite table entries out of range")
        ids = [e for e in range(n) if all(t[e][x] == x and t[x][e] == x for x in range(n))]
        if len(ids) != 1:
            raise SpecError("finite table has no unique identity")
        self.order = n
        self.table = t
        self._id = ids[0]
        inv = []
        for x in range(n):
            ys = [y for y in range(n) if t[x][y] == self._id]
            if len(ys) != 1 or t[ys[0]][x] != self._id:
                raise SpecError("finite table is not a group (inverse missing)")
            inv.append(ys[0])
        self._inv = tuple(inv)
        for x in range(n):
            for y in range(n):
                xy = t[x][y]
                for z in range(n):
                    if t[xy][z] != t[x][t[y][z]]:
                        raise SpecError("finite table is not associative")

    def identity(self):
        return self._id

    def mul(self, x, y):
        return self.table[x][y]

    def inv(self, x):
        return self._inv[x]

    def parse(self, data):
        if not isinstance(data, int) or not 0 <= data < self.order:
            raise SpecError(f"finite-table element must be an index < {self.order}: {data!r}")
        return data

    def dump(self, x):
        return x

    def element_order(self, x) -> int:
        k, p = 1, x
        while p != self._id:
            p = self.table[p][x]
            k += 1
        return k

    def power_structure(self, x, cap: int = 64) -> Optional[int]:
        k = self.element_order(x)
        return k if k <= cap else None

    def solve_power(self, v, target):
        # v is the identity after the power structure is applied
        if v != self._id:
            raise ValueError("solve_power expects the identity for finite factors")
        return ALL if target == self._id else set()


class DirectProductBackend(Backend):
    kind = "direct_product"

    def __init__(self, factors: Sequence[Backend]):
        if len(factors) < 1:
            raise SpecError("direct product needs at least one factor")
        self.factors = tuple(factors)
        self._id = tuple(f.identity() for f in factors)

    def identity(self):
        return self._id

    def mul(self, x, y):
        return tuple(f.mul(a, b) for f, a, b in zip(self.factors, x, y))

    def inv(self, x):
        return tuple(f.inv(a) for f, a in zip(self.factors, x))

    def parse(self, data):
        if not isinstance(data, list) or len(data) != len(self.factors):
            raise SpecError("direct-product element must list one component per factor")
        return tuple(f.parse(d) for f, d in zip(self.factors, data))

    def dump(self, x):
        return [f.dump(a) for f, a in zip(self.factors, x)]

    def power_structure(self, x, cap: int = 64) -> Optional[int]:
        k = 1
        for f, a in zip(self.factors, x):
            kf = f.power_structure(a, cap)
            if kf is None:
                return None
            k = lcm(k, kf)
        return k if k <= cap * cap else None

    def solve_power(self, v, target):
        result: Any = ALL
        for f, a, t in zip(self.factors, v, target):
            sub = f.solve_power(a, t)
            if sub == ALL:
                continue
            result = sub if result == ALL else result & sub
            if not result:
                return set()
        return result


class FreeProductBackend(Backend):
    """Free product with syllable normal form."""

    kind = "free_product"

    def __init__(self, factors: Sequence[Backend]):
        if len(factors) < 1:
            raise SpecError("free product needs at least one factor")
        self.factors = tuple(factors)
        self._ids = tuple(f.identity() for f in factors)

    def identity(self):
        return ()

    def mul(self, x, y):
        if not x:
            return y
        if not y:
            return x
        left = list(x)
        j = 0
        while left and j < len(y) and left[-1][0] == y[j][0]:
            i = y[j][0]
            m = self.factors[i].mul(left[-1][1], y[j][1])
            left.pop()
            j += 1
            if m != self._ids[i]:
                left.append((i, m))
                break
        left.extend(y[j:])
        return tuple(left)

    def inv(self, x):
        return tuple((i, self.factors[i].inv(e)) for i, e in reversed(x))

    def cyclic_reduction(self, x):
        """Return ``(u, c)`` with ``x = u c u^-1`` and ``c`` cyclically reduced."""
        u = ()
        c = x
        while len(c) >= 2 and c[0][0] == c[-1][0]:
            first = (c[0],)
            u = self.mul(u, first)
            c = self.mul(self.mul(self.inv(first), c), first)
        return u, c

    def power_hits(self, g, targets):
        u, c = self.cyclic_reduction(g)
        u_inv = self.inv(u)
        out: List[Optional[bool]] = []
        if not c:
            return [t == () for t in targets]
        if len(c) == 1:
            # elliptic: g**m = u c**m u^-1 stays inside one conjugated factor
            i, e = c[0]
            factor = self.factors[i]
            for t in targets:
                t2 = self.mul(self.mul(u_inv, t), u)
                if not t2:
                    out.append(factor.power_hits(e, [factor.identity()])[0])
                elif len(t2) == 1 and t2[0][0] == i:
                    out.append(factor.power_hits(e, [t2[0][1]])[0])
                else:
                    out.append(False)
            return out
        # hyperbolic: syllable length of g**m is at least m|c| - 2|u|
        longest = max((len(t) for t in targets), default=0)
        m_max = (longest + 2 * len(u)) // len(c) + 1
        powers = set()
        p = ()
        for _ in range(m_max):
            p = self.mul(p, g)
            powers.add(p)
        return [t in powers for t in targets]

    def syllable(self, i: int, e):
        return () if e == self._ids[i] else ((i, e),)

    def parse(self, data):
        """Accepts ``{"factor": i, "element": e}`` or a list of those (a product)."""
        items = data if isinstance(data, list) else [data]
        out = ()
        for item in items:
            try:
                i = int(item["factor"])
                raw = item["element"]
            except (KeyError, TypeError, ValueError) as exc:
                raise SpecError(f"free-product element needs 'factor' and 'element': {item!r}") from exc
            if not 0 <= i < len(self.factors):
                raise SpecError(f"free-product factor index {i} out of range")
            out = self.mul(out, self.syllable(i, self.factors[i].parse(raw)))
        return out

    def dump(self, x):
        return [{"factor": i, "element": self.factors[i].dump(e)} for i, e in x]


def iter_backend_leaves(backend: Backend) -> Iterable[Backend]:
    if isinstance(backend, (DirectProductBackend, FreeProductBackend)):
        for f in backend.factors:
            yield from iter_backend_leaves(f)
    else:
        yield backend
