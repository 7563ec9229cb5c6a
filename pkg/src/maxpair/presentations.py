"""Polycyclic presentations: parsing, collection, and group construction.

A presentation lists generators g1..gn with prime relative orders, power
relations g_i^p_i = word(support > i), and conjugate relations
g_j^{g_i} = word(support > i) for j > i.  Elements of the presented group
are exponent vectors in normal form; multiplication is done by collection
from the left.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import prod

import numpy as np

from ._kernels import assoc_violation

# Full-table associativity checking is O(n^3); beyond this order we fall
# back to generator-triple checks.
FULL_ASSOC_LIMIT = 1000

__all__ = [
    "Word",
    "PcPresentation",
    "PresentationError",
    "InconsistentPresentationError",
    "parse_presentation",
    "render_presentation",
    "normal_form",
    "build_group",
]


class PresentationError(ValueError):
    """Raised for grammar or invariant violations in a presentation."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InconsistentPresentationError(ValueError):
    """The presentation does not define a group of order prod(rel_orders)."""


@dataclass(frozen=True)
class Word:
    """A normal-form word: ordered (generator index, exponent) pairs, 1-based."""

    factors: tuple[tuple[int, int], ...] = ()

    def __bool__(self):
        return bool(self.factors)


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    for d in range(2, int(m**0.5) + 1):
        if m % d == 0:
            return False
    return True


@dataclass(frozen=True)
class PcPresentation:
    """A consistent-looking pc presentation; consistency proper is checked
    by :func:`build_group`."""

    name: str
    n: int
    rel_orders: tuple[int, ...]
    power_rels: tuple[Word, ...]                 # power_rels[i-1] = g_i^{p_i}
    conj_rels: dict = field(default_factory=dict)  # (j, i) -> Word for g_j^{g_i}

    def __post_init__(self):
        if self.n != len(self.rel_orders) or self.n != len(self.power_rels):
            raise PresentationError("generator count mismatch")
        for i, p in enumerate(self.rel_orders, start=1):
            if not _is_prime(p):
                raise PresentationError(f"relative order of g{i} is {p}, not prime")
        for i, w in enumerate(self.power_rels, start=1):
            self._check_word(w, min_index=i + 1, what=f"pow g{i}")
        for (j, i), w in self.conj_rels.items():
            if not (1 <= i < j <= self.n):
                raise PresentationError(f"conj ({j},{i}) requires n >= j > i >= 1")
            self._check_word(w, min_index=i + 1, what=f"conj g{j} g{i}")

    def _check_word(self, w: Word, min_index: int, what: str):
        last = 0
        for k, e in w.factors:
            if not (1 <= k <= self.n):
                raise PresentationError(f"{what}: unknown generator g{k}")
            if k < min_index:
                raise PresentationError(
                    f"{what}: support must lie in indices > {min_index - 1}"
                )
            if k <= last:
                raise PresentationError(f"{what}: word indices must be ascending")
            if not (1 <= e < self.rel_orders[k - 1]):
                raise PresentationError(f"{what}: exponent {e} of g{k} out of range")
            last = k

    @property
    def order(self) -> int:
        return prod(self.rel_orders)


_WORD_TOKEN = re.compile(r"^g(\d+)(?:\^(-?\d+))?$")


def _parse_word(text: str, line: int) -> Word:
    text = text.strip()
    if text == "1":
        return Word()
    factors = []
    for tok in text.split():
        m = _WORD_TOKEN.match(tok)
        if not m:
            raise PresentationError(f"bad word token {tok!r}", line)
        factors.append((int(m.group(1)), int(m.group(2) or 1)))
    return Word(tuple(factors))


def parse_presentation(text: str) -> PcPresentation:
    """Parse the line-oriented presentation grammar into a PcPresentation."""
    name = None
    n = None
    orders: dict[int, int] = {}
    powers: dict[int, Word] = {}
    conjs: dict[tuple[int, int], Word] = {}
    saw_end = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if saw_end:
            raise PresentationError("content after 'end'", lineno)
        parts = line.split()
        kw = parts[0]
        if kw == "group":
            if len(parts) != 2:
                raise PresentationError("usage: group <name>", lineno)
            name = parts[1]
        elif kw == "gens":
            if len(parts) != 2 or not parts[1].isdigit():
                raise PresentationError("usage: gens <n>", lineno)
            n = int(parts[1])
        elif kw == "order":
            if len(parts) != 3 or not parts[1].startswith("g"):
                raise PresentationError("usage: order g<i> <prime>", lineno)
            i = int(parts[1][1:])
            if i != len(orders) + 1:
                raise PresentationError(
                    f"order lines must be ascending, expected g{len(orders) + 1}",
                    lineno,
                )
            orders[i] = int(parts[2])
        elif kw == "pow":
            m = re.match(r"^pow\s+(\d+)\s*:\s*(.*)$", line)
            if not m:
                raise PresentationError("usage: pow <i> : <word>", lineno)
            powers[int(m.group(1))] = _parse_word(m.group(2), lineno)
        elif kw == "conj":
            m = re.match(r"^conj\s+(\d+)\s+(\d+)\s*:\s*(.*)$", line)
            if not m:
                raise PresentationError("usage: conj <j> <i> : <word>", lineno)
            j, i = int(m.group(1)), int(m.group(2))
            if j <= i:
                raise PresentationError(f"conj requires j > i, got j={j}, i={i}", lineno)
            conjs[(j, i)] = _parse_word(m.group(3), lineno)
        elif kw == "end":
            saw_end = True
        else:
            raise PresentationError(f"unknown keyword {kw!r}", lineno)
    if name is None or n is None:
        raise PresentationError("missing 'group' or 'gens' header")
    if not saw_end:
        raise PresentationError("missing 'end'")
    if set(orders) != set(range(1, n + 1)):
        raise PresentationError(f"expected order lines for g1..g{n}")
    rel_orders = tuple(orders[i] for i in range(1, n + 1))
    power_rels = tuple(powers.get(i, Word()) for i in range(1, n + 1))
    return PcPresentation(name, n, rel_orders, power_rels, conjs)


def _render_word(w: Word) -> str:
    if not w.factors:
        return "1"
    return " ".join(f"g{k}" if e == 1 else f"g{k}^{e}" for k, e in w.factors)


def render_presentation(pres: PcPresentation) -> str:
    """Canonical renderer; parse(render(pres)) == pres."""
    lines = [f"group {pres.name}", f"gens {pres.n}"]
    for i, p in enumerate(pres.rel_orders, start=1):
        lines.append(f"order g{i} {p}")
    for i, w in enumerate(pres.power_rels, start=1):
        if w:
            lines.append(f"pow {i} : {_render_word(w)}")
    for (j, i) in sorted(pres.conj_rels):
        lines.append(f"conj {j} {i} : {_render_word(pres.conj_rels[(j, i)])}")
    lines.append("end")
    return "\n".join(lines) + "\n"


class _Collector:
    """Collection from the left over a fixed presentation.

    Vectors are lists of length n with 0 <= e_k < p_k; index 0-based
    internally, generator arguments 0-based.
    """

    def __init__(self, pres: PcPresentation):
        self.pres = pres
        self.n = pres.n
        self.orders = pres.rel_orders
        # 0-based relation tables
        self.pow = [
            [(k - 1, e) for k, e in w.factors] for w in pres.power_rels
        ]
        self.conj = {
            (j - 1, i - 1): [(k - 1, e) for k, e in w.factors]
            for (j, i), w in pres.conj_rels.items()
        }

    def mul_gen(self, vec, i):
        """Normal vector * g_i (single generator, 0-based)."""
        res = list(vec)
        tail = [(k, res[k]) for k in range(i + 1, self.n) if res[k]]
        for k in range(i + 1, self.n):
            res[k] = 0
        res[i] += 1
        if res[i] == self.orders[i]:
            res[i] = 0
            for k, e in self.pow[i]:
                for _ in range(e):
                    res = self.mul_gen(res, k)
        for k, e in tail:
            cw = self.conj.get((k, i))
            if cw is None:
                for _ in range(e):
                    res = self.mul_gen(res, k)
            else:
                for _ in range(e):
                    for kk, ee in cw:
                        for _ in range(ee):
                            res = self.mul_gen(res, kk)
        return res

    def mul_word(self, vec, factors):
        """Normal vector * word; factors are 0-based (gen, exponent >= 0)."""
        res = list(vec)
        for k, e in factors:
            for _ in range(e):
                res = self.mul_gen(res, k)
        return res

    def gen_order(self, i) -> int:
        """Order of the element g_i (not its relative order)."""
        vec = [0] * self.n
        vec[i] = 1
        acc = list(vec)
        m = 1
        while any(acc):
            acc = self.mul_gen_vec(acc, vec)
            m += 1
        return m

    def mul_gen_vec(self, u, v):
        """u * v for normal vectors u, v."""
        res = list(u)
        for k in range(self.n):
            if v[k]:
                for _ in range(v[k]):
                    res = self.mul_gen(res, k)
        return res


def normal_form(pres: PcPresentation, factors) -> Word:
    """Collect an arbitrary word (any integer exponents) to normal form.

    ``factors`` is an iterable of (generator index, exponent) pairs, 1-based,
    or a Word.
    """
    if isinstance(factors, Word):
        factors = factors.factors
    coll = _Collector(pres)
    vec = [0] * pres.n
    for k, e in factors:
        if not (1 <= k <= pres.n):
            raise PresentationError(f"generator index g{k} out of range")
        i = k - 1
        if e < 0:
            e %= coll.gen_order(i)
        for _ in range(e):
            vec = coll.mul_gen(vec, i)
    return Word(tuple((k + 1, e) for k, e in enumerate(vec) if e))


def build_group(pres: PcPresentation, cap: int | None = None):
    """Enumerate the presented group into a ConcreteGroup.

    Raises InconsistentPresentationError when the collected multiplication
    table fails the associativity check.
    """
    from .engine import ConcreteGroup, DEFAULT_ELEMENT_CAP

    cap = DEFAULT_ELEMENT_CAP if cap is None else cap
    n_elems = pres.order
    if n_elems > cap:
        raise ValueError(f"group order {n_elems} exceeds element cap {cap}")
    n = pres.n
    coll = _Collector(pres)

    # Mixed-radix indexing: g1 most significant, identity = 0.
    strides = [0] * n
    s = 1
    for i in range(n - 1, -1, -1):
        strides[i] = s
        s *= pres.rel_orders[i]

    vecs = []
    idx = [0] * n
    for _ in range(n_elems):
        vecs.append(list(idx))
        for i in range(n - 1, -1, -1):
            idx[i] += 1
            if idx[i] < pres.rel_orders[i]:
                break
            idx[i] = 0

    def index_of(vec):
        return sum(e * strides[i] for i, e in enumerate(vec))

    # Right multiplication by each generator, as a permutation of indices.
    right = np.empty((n, n_elems), dtype=np.int32)
    for i in range(n):
        for x, vec in enumerate(vecs):
            right[i, x] = index_of(coll.mul_gen(vec, i))

    mul = np.empty((n_elems, n_elems), dtype=np.int32)
    col = np.arange(n_elems, dtype=np.int32)
    for y, vec in enumerate(vecs):
        m = col
        for i in range(n):
            for _ in range(vec[i]):
                m = right[i][m]
        mul[:, y] = m

    _check_consistency(pres, mul, [strides[i] for i in range(n)])

    inv = np.empty(n_elems, dtype=np.int32)
    rows, cols = np.nonzero(mul == 0)
    inv[rows] = cols

    return ConcreteGroup(
        n=n_elems,
        mul=mul,
        inv=inv,
        gens=[strides[i] for i in range(n)],
        label=pres.name,
        presentation=pres,
    )


def _check_consistency(pres, mul, gen_indices):
    n_elems = mul.shape[0]
    ident = np.arange(n_elems, dtype=mul.dtype)
    if not (np.array_equal(mul[0], ident) and np.array_equal(mul[:, 0], ident)):
        raise InconsistentPresentationError(
            f"{pres.name}: identity does not act trivially"
        )
    if n_elems <= FULL_ASSOC_LIMIT:
        bad = assoc_violation(mul)
        if bad >= 0:
            raise InconsistentPresentationError(
                f"{pres.name}: associativity fails at element {bad}"
            )
        return
    # Generator-based check plus exact relative orders.
    for g in gen_indices:
        for h in gen_indices:
            if not np.array_equal(mul[mul[:, g], h], mul[:, mul[g, h]]):
                raise InconsistentPresentationError(
                    f"{pres.name}: associativity fails on (x, g{g}, g{h})"
                )
            if not np.array_equal(mul[g][mul[h]], mul[mul[g, h]]):
                raise InconsistentPresentationError(
                    f"{pres.name}: associativity fails on (g{g}, g{h}, x)"
                )
    for i, g in enumerate(gen_indices):
        p = pres.rel_orders[i]
        x = 0
        for _ in range(p):
            x = mul[x, g]
        coll = _Collector(pres)
        w = [(k - 1, e) for k, e in pres.power_rels[i].factors]
        vec = coll.mul_word([0] * pres.n, w)
        # gen_indices[k] is the index (and mixed-radix stride) of g_{k+1}
        expected = sum(e * gen_indices[k] for k, e in enumerate(vec))
        if x != expected:
            raise InconsistentPresentationError(
                f"{pres.name}: relative order of generator {i + 1} is not exact"
            )
