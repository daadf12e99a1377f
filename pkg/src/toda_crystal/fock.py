"""Charge-s free-fermion sector on a partition basis with an energy cutoff.

States are Maya diagrams: |mu, s> occupies the levels {s + mu_i - i + 1}
and every level far enough below. psi_a creates a particle at level -a,
psi*_b removes the one at level b, and each move picks up the parity of
the occupied levels strictly above the touched level. All operators here
preserve the charge, so a fixed sector is a sparse matrix algebra over
the partitions of weight <= N.

Truncation is certified instead of bounded: a product entry is trusted
only when the split rule proves every intermediate state fits under the
cutoff. Uncertified entries are flagged, never silently used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import SeriesContext, TruncatedSeries, format_rational
from .partitions import Partition, enumerate_partitions

INF = math.inf


@dataclass(frozen=True)
class SectorConfig:
    """Fixed charge s, energy cutoff N, rational p = q^(1/2), and the
    integer weight l of the q^(l W0/2) insertion."""

    s: int
    N: int
    p: Fraction
    l: int = 0

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        if self.N < 0:
            raise ValueError("cutoff N must be nonnegative")
        if not (0 < self.p < 1):
            raise ValueError("p must satisfy 0 < p < 1")


@dataclass(frozen=True)
class FockState:
    charge: int
    shape: Partition

    @property
    def weight(self) -> int:
        return self.shape.weight


@dataclass(frozen=True)
class Overflow:
    """A bilinear move whose image leaves the truncated sector."""

    charge: int
    shape: Partition

    @property
    def weight(self) -> int:
        return self.shape.weight


class Basis:
    """Partitions of weight <= cutoff in canonical order; the order is graded,
    so each weight occupies a contiguous index range."""

    __slots__ = ("cutoff", "parts", "index", "weights", "weight_range")

    def __init__(self, cutoff: int):
        self.cutoff = cutoff
        self.parts = enumerate_partitions(cutoff, "all_up_to")
        self.index = {mu: i for i, mu in enumerate(self.parts)}
        self.weights = [mu.weight for mu in self.parts]
        self.weight_range: dict[int, range] = {}
        start = 0
        for n in range(cutoff + 1):
            stop = start
            while stop < len(self.parts) and self.parts[stop].weight == n:
                stop += 1
            self.weight_range[n] = range(start, stop)
            start = stop

    def __len__(self):
        return len(self.parts)

    def states(self, s: int) -> list[FockState]:
        return [FockState(s, mu) for mu in self.parts]


@lru_cache(maxsize=None)
def get_basis(cutoff: int) -> Basis:
    return Basis(cutoff)


def basis(config: SectorConfig) -> list[FockState]:
    return get_basis(config.N).states(config.s)


# ---------------------------------------------------------------------------
# Maya diagram combinatorics

def _levels(parts: tuple[int, ...], s: int) -> list[int]:
    """Occupied levels above the filled tail, strictly decreasing.
    The tail occupies every level <= s - len(parts)."""
    return [s + m - i for i, m in enumerate(parts)]


def occupied(parts: tuple[int, ...], s: int, x: int) -> bool:
    if x <= s - len(parts):
        return True
    return any(s + m - i == x for i, m in enumerate(parts))


def count_above(parts: tuple[int, ...], s: int, x: int) -> int:
    """Number of occupied levels strictly above x; finite by cofinality."""
    c = 0
    for i, m in enumerate(parts):
        if s + m - i > x:
            c += 1
        else:
            break
    tail_top = s - len(parts)
    if tail_top > x:
        c += tail_top - x
    return c


def move_particle(parts: tuple[int, ...], s: int, src: int, dst: int):
    """Move one particle from level src to level dst.

    Returns (sign, new_parts) or None when the move is Pauli-blocked.
    """
    if not occupied(parts, s, src):
        return None
    if dst == src:
        return (1, parts)
    if occupied(parts, s, dst):
        return None
    sign_exp = count_above(parts, s, src) + count_above(parts, s, dst)
    if src > dst:
        # removing src lowers the count above dst by one
        sign_exp -= 1
    tail_top = s - len(parts)
    excited = _levels(parts, s)
    if src <= tail_top:
        excited += list(range(tail_top, src - 1, -1))
        tail_top = src - 1
    excited.remove(src)
    excited.append(dst)
    excited.sort(reverse=True)
    new_parts = []
    for i, x in enumerate(excited, start=1):
        part = x - s + i - 1
        if part < 0:
            raise AssertionError("charge changed during a move")
        new_parts.append(part)
    while new_parts and new_parts[-1] == 0:
        new_parts.pop()
    return ((-1) ** sign_exp, tuple(new_parts))


def _move_sources(parts: tuple[int, ...], s: int, m: int) -> list[int]:
    """Occupied levels from which a shift by -m can leave the filled tail."""
    tail_top = s - len(parts)
    cands = _levels(parts, s)
    cands.extend(range(tail_top, tail_top - abs(m) - 1, -1))
    return cands


def apply_bilinear(a: int, b: int, state: FockState, normal_ordered: bool = True,
                   cutoff: int | None = None):
    """Action of psi_a psi*_b (normal ordered against the charge-0 vacuum
    when requested) on a basis state.

    Returns None for zero, (coeff, FockState) otherwise, or an Overflow
    marker when a cutoff is supplied and the image escapes it.
    """
    parts, s = state.shape.parts, state.charge
    x_rm, x_add = b, -a
    if a + b == 0:
        occ = 1 if occupied(parts, s, x_rm) else 0
        coeff = occ - (1 if normal_ordered and b <= 0 else 0)
        if coeff == 0:
            return None
        return (coeff, state)
    res = move_particle(parts, s, x_rm, x_add)
    if res is None:
        return None
    sign, new_parts = res
    new_shape = Partition(new_parts)
    if cutoff is not None and new_shape.weight > cutoff:
        return Overflow(s, new_shape)
    return (sign, FockState(s, new_shape))


def maya_diag_sum(parts: tuple[int, ...], s: int, f: Callable[[int], object]):
    """sum_{x occupied, x>0} f(x) - sum_{x empty, x<=0} f(x); both sums are finite."""
    total = None

    def add(v):
        nonlocal total
        total = v if total is None else total + v

    tail_top = s - len(parts)
    for x in _levels(parts, s):
        if x > 0:
            add(f(x))
    for x in range(1, tail_top + 1):
        add(f(x))
    # empty levels can only sit strictly above the tail
    for x in range(tail_top + 1, 1):
        if not occupied(parts, s, x):
            add(-f(x))
    return total if total is not None else 0


# ---------------------------------------------------------------------------
# Shift classes and exactness certificates

@dataclass(frozen=True)
class ShiftClass:
    """Energy bookkeeping of an operator: BANDED(delta) means
    row weight = col weight + delta for every nonzero entry."""

    kind: str  # 'banded' | 'raising' | 'lowering' | 'full'
    delta: int = 0

    def compose(self, other: "ShiftClass") -> "ShiftClass":
        if self.kind == "banded" and other.kind == "banded":
            return ShiftClass("banded", self.delta + other.delta)
        if self.kind == other.kind and self.kind in ("raising", "lowering"):
            return ShiftClass(self.kind)
        return ShiftClass("full")

    def join(self, other: "ShiftClass") -> "ShiftClass":
        return self if self == other else ShiftClass("full")

    def transpose(self) -> "ShiftClass":
        if self.kind == "banded":
            return ShiftClass("banded", -self.delta)
        if self.kind == "raising":
            return ShiftClass("lowering")
        if self.kind == "lowering":
            return ShiftClass("raising")
        return self


BANDED0 = ShiftClass("banded", 0)
RAISING = ShiftClass("raising")
LOWERING = ShiftClass("lowering")
FULL = ShiftClass("full")


def banded(delta: int) -> ShiftClass:
    return ShiftClass("banded", delta)


@dataclass(frozen=True)
class ExactnessCertificate:
    """Split rule for a product: an entry (row, col) is certified exact when
    at every split point min(row-side bound, col-side bound) <= cutoff, where
    bounds accumulate max(0, -delta) walking right from the row (RAISING
    transparent, LOWERING unbounded) and max(0, delta) walking left from the
    col (LOWERING transparent, RAISING unbounded)."""

    factors: tuple[ShiftClass, ...]
    cutoff: int

    def _left_bounds(self, row_w: int) -> list:
        bounds = []
        b: float = row_w
        for f in self.factors[:-1]:
            if b != INF:
                if f.kind == "banded":
                    b = b + max(0, -f.delta)
                elif f.kind == "raising":
                    pass
                else:
                    b = INF
            bounds.append(b)
        return bounds

    def _right_bounds(self, col_w: int) -> list:
        bounds = []
        b: float = col_w
        for f in reversed(self.factors[1:]):
            if b != INF:
                if f.kind == "banded":
                    b = b + max(0, f.delta)
                elif f.kind == "lowering":
                    pass
                else:
                    b = INF
            bounds.append(b)
        bounds.reverse()
        return bounds

    def certified(self, row_weight: int, col_weight: int) -> bool:
        if len(self.factors) <= 1:
            return True
        left = self._left_bounds(row_weight)
        right = self._right_bounds(col_weight)
        return all(min(lb, rb) <= self.cutoff for lb, rb in zip(left, right))

    def certified_pair_count(self, basis_obj: Basis) -> int:
        sizes = {n: len(basis_obj.weight_range[n]) for n in range(basis_obj.cutoff + 1)}
        total = 0
        for w1, c1 in sizes.items():
            for w2, c2 in sizes.items():
                if self.certified(w1, w2):
                    total += c1 * c2
        return total


# ---------------------------------------------------------------------------
# Sector operators

def _is_zero(v) -> bool:
    return not v


class SectorOperator:
    """Sparse charge-preserving operator, rows[i][j] = <lambda_i, s| O |mu_j, s>."""

    __slots__ = ("config", "basis", "rows", "shift")

    def __init__(self, config: SectorConfig, basis_obj: Basis,
                 rows: dict[int, dict[int, object]], shift: ShiftClass):
        self.config = config
        self.basis = basis_obj
        self.rows = {i: {j: v for j, v in row.items() if not _is_zero(v)}
                     for i, row in rows.items()}
        self.rows = {i: row for i, row in self.rows.items() if row}
        self.shift = shift

    @classmethod
    def identity(cls, config: SectorConfig) -> "SectorOperator":
        b = get_basis(config.N)
        one = Fraction(1)
        return cls(config, b, {i: {i: one} for i in range(len(b))}, BANDED0)

    @classmethod
    def diagonal(cls, config: SectorConfig, values: Sequence) -> "SectorOperator":
        b = get_basis(config.N)
        return cls(config, b, {i: {i: values[i]} for i in range(len(b)) if not _is_zero(values[i])},
                   BANDED0)

    def get(self, i: int, j: int):
        return self.rows.get(i, {}).get(j, Fraction(0))

    def _check_compatible(self, other: "SectorOperator"):
        if self.config != other.config:
            raise ValueError(f"incompatible configs {self.config} vs {other.config}")

    def __add__(self, other: "SectorOperator") -> "SectorOperator":
        self._check_compatible(other)
        rows = {i: dict(row) for i, row in self.rows.items()}
        for i, row in other.rows.items():
            tgt = rows.setdefault(i, {})
            for j, v in row.items():
                cur = tgt.get(j)
                nv = v if cur is None else cur + v
                if _is_zero(nv):
                    tgt.pop(j, None)
                else:
                    tgt[j] = nv
        return SectorOperator(self.config, self.basis, rows, self.shift.join(other.shift))

    def __sub__(self, other: "SectorOperator") -> "SectorOperator":
        return self + other.scale(Fraction(-1))

    def scale(self, c) -> "SectorOperator":
        if _is_zero(c):
            return SectorOperator(self.config, self.basis, {}, self.shift)
        return SectorOperator(self.config, self.basis,
                              {i: {j: c * v for j, v in row.items()} for i, row in self.rows.items()},
                              self.shift)

    def matmul(self, other: "SectorOperator") -> "SectorOperator":
        self._check_compatible(other)
        out: dict[int, dict[int, object]] = {}
        orows = other.rows
        for i, arow in self.rows.items():
            acc: dict[int, object] = {}
            for k, av in arow.items():
                brow = orows.get(k)
                if not brow:
                    continue
                for j, bv in brow.items():
                    cur = acc.get(j)
                    nv = av * bv if cur is None else cur + av * bv
                    acc[j] = nv
            acc = {j: v for j, v in acc.items() if not _is_zero(v)}
            if acc:
                out[i] = acc
        return SectorOperator(self.config, self.basis, out, self.shift.compose(other.shift))

    __matmul__ = matmul

    def transpose(self) -> "SectorOperator":
        out: dict[int, dict[int, object]] = {}
        for i, row in self.rows.items():
            for j, v in row.items():
                out.setdefault(j, {})[i] = v
        return SectorOperator(self.config, self.basis, out, self.shift.transpose())

    def scale_rows(self, fn: Callable[[int], object]) -> "SectorOperator":
        """Left multiplication by the diagonal with entries fn(row index)."""
        return SectorOperator(self.config, self.basis,
                              {i: {j: fn(i) * v for j, v in row.items()}
                               for i, row in self.rows.items()}, self.shift)

    def scale_cols(self, fn: Callable[[int], object]) -> "SectorOperator":
        return SectorOperator(self.config, self.basis,
                              {i: {j: v * fn(j) for j, v in row.items()}
                               for i, row in self.rows.items()}, self.shift)

    def diag_vector(self) -> list:
        return [self.get(i, i) for i in range(len(self.basis))]

    def nonzero_entries_sorted(self):
        for i in sorted(self.rows):
            row = self.rows[i]
            for j in sorted(row):
                yield i, j, row[j]

    def __eq__(self, other):
        return (isinstance(other, SectorOperator) and self.config == other.config
                and self.rows == other.rows)

    __hash__ = None


def op_product(factors: Sequence[SectorOperator]) -> tuple[SectorOperator, ExactnessCertificate]:
    if not factors:
        raise ValueError("op_product needs at least one factor")
    for f in factors[1:]:
        factors[0]._check_compatible(f)
    prod = reduce(lambda a, b: a.matmul(b), factors)
    cert = ExactnessCertificate(tuple(f.shift for f in factors), factors[0].config.N)
    return prod, cert


def apply_row(vec: Mapping[int, object], op: SectorOperator) -> dict[int, object]:
    """Row vector times matrix."""
    out: dict[int, object] = {}
    for i, v in vec.items():
        row = op.rows.get(i)
        if not row:
            continue
        for j, m in row.items():
            cur = out.get(j)
            nv = v * m if cur is None else cur + v * m
            out[j] = nv
    return {j: v for j, v in out.items() if not _is_zero(v)}


def apply_col(op: SectorOperator, vec: Mapping[int, object]) -> dict[int, object]:
    """Matrix times column vector."""
    out: dict[int, object] = {}
    for i, row in op.rows.items():
        total = None
        for j, m in row.items():
            v = vec.get(j)
            if v is None:
                continue
            term = m * v
            total = term if total is None else total + term
        if total is not None and not _is_zero(total):
            out[i] = total
    return out


def dump_entries(op: SectorOperator, cert: ExactnessCertificate | None = None) -> list[dict]:
    """Debug/fixture dump: one JSON row per nonzero entry, canonically sorted."""
    out = []
    b = op.basis
    for i, j, v in op.nonzero_entries_sorted():
        val = format_rational(v) if isinstance(v, Fraction) else str(v)
        certified = True if cert is None else cert.certified(b.weights[i], b.weights[j])
        out.append({"row": b.parts[i].to_json(), "col": b.parts[j].to_json(),
                    "val": val, "certified": certified})
    return out


# ---------------------------------------------------------------------------
# Concrete operators

@lru_cache(maxsize=None)
def _ppow_cache(p: Fraction):
    cache: dict[int, Fraction] = {}

    def pw(e: int) -> Fraction:
        v = cache.get(e)
        if v is None:
            v = p ** e
            cache[e] = v
        return v

    return pw


@lru_cache(maxsize=None)
def v_op(k: int, m: int, config: SectorConfig) -> SectorOperator:
    """Quantum-torus generator with upper index k and energy shift -m:
    q^{-km/2} sum_n q^{kn} :psi_{m-n} psi*_n:. The m = 0 member is the
    diagonal with the standard potential eigenvalues."""
    if abs(m) > config.N:
        raise ValueError(f"|m| = {abs(m)} exceeds the cutoff {config.N}")
    b = get_basis(config.N)
    s = config.s
    pw = _ppow_cache(config.p)
    if m == 0:
        vals = [maya_diag_sum(mu.parts, s, lambda x: pw(2 * k * x)) or Fraction(0)
                for mu in b.parts]
        return SectorOperator(config, b, {i: {i: vals[i]} for i in range(len(b))
                                          if vals[i]}, BANDED0)
    rows: dict[int, dict[int, object]] = {}
    for j, mu in enumerate(b.parts):
        if not 0 <= mu.weight - m <= config.N:
            continue
        for src in _move_sources(mu.parts, s, m):
            res = move_particle(mu.parts, s, src, src - m)
            if res is None:
                continue
            sign, new_parts = res
            i = b.index[Partition(new_parts)]
            amp = pw(2 * k * src - k * m)
            if sign < 0:
                amp = -amp
            cur = rows.setdefault(i, {}).get(j)
            rows[i][j] = amp if cur is None else cur + amp
    return SectorOperator(config, b, rows, banded(-m))


def j_op(k: int, config: SectorConfig) -> SectorOperator:
    """Current mode: shifts one particle down by k; equals v_op(0, k)."""
    return v_op(0, k, config)


def l0_diag(config: SectorConfig) -> list[int]:
    b = get_basis(config.N)
    return [maya_diag_sum(mu.parts, config.s, lambda x: x) or 0 for mu in b.parts]


def w0_diag(config: SectorConfig) -> list[int]:
    b = get_basis(config.N)
    return [maya_diag_sum(mu.parts, config.s, lambda x: x * x) or 0 for mu in b.parts]


def diag_op(kind: str, config: SectorConfig, c: int = 1,
            ctx: SeriesContext | None = None) -> SectorOperator:
    """Diagonal operators: 'L0', 'W0', 'pW0_pow' (p^{c * W0 eigenvalue}), or
    'Q_L0' whose entries are Q monomials in the given series context.
    Q exponents beyond the context cap are dropped (the zero series stays out
    of the sparse storage, which is the drop marker)."""
    b = get_basis(config.N)
    if kind == "L0":
        vals = [Fraction(v) for v in l0_diag(config)]
    elif kind == "W0":
        vals = [Fraction(v) for v in w0_diag(config)]
    elif kind == "pW0_pow":
        pw = _ppow_cache(config.p)
        vals = [pw(c * v) for v in w0_diag(config)]
    elif kind == "Q_L0":
        if ctx is None:
            raise ValueError("Q_L0 needs a series context")
        vals = []
        for v in l0_diag(config):
            key = [0] * ctx.nvars
            key[0] = v
            vals.append(TruncatedSeries(ctx, {tuple(key): Fraction(1)}))
    else:
        raise ValueError(f"unknown diagonal kind {kind!r}")
    return SectorOperator.diagonal(config, vals)


def bilinear_diagonal(config: SectorConfig, f: Callable[[int], Fraction]) -> SectorOperator:
    """sum_n f(n) :psi_{-n} psi*_n: assembled move by move through
    apply_bilinear; the slow reference route for the diagonal operators."""
    b = get_basis(config.N)
    span = config.N + abs(config.s) + 2
    vals = [Fraction(0)] * len(b)
    for idx, mu in enumerate(b.parts):
        state = FockState(config.s, mu)
        for n in range(-span, span + 1):
            res = apply_bilinear(-n, n, state, normal_ordered=True)
            if res is None:
                continue
            coeff, out_state = res
            assert out_state == state
            vals[idx] += coeff * f(n)
    return SectorOperator.diagonal(config, vals)


def transfer_weights(p: Fraction, N: int, alternating: bool) -> dict[int, Fraction]:
    """Coupling of J_{+-k} inside the transfer exponentials:
    q^{k/2}/(k(1-q^k)), with an extra (-1)^(k+1) for the alternating family."""
    out = {}
    for k in range(1, N + 1):
        c = p ** k / (k * (1 - p ** (2 * k)))
        if alternating and k % 2 == 0:
            c = -c
        out[k] = c
    return out


def vertex_op(coeffs: Mapping[int, Fraction], direction: str,
              config: SectorConfig) -> SectorOperator:
    """exp(sum_k c_k J_{+k}) (lowering) or exp(sum_k c_k J_{-k}) (raising),
    via the terminating nilpotent expansion on the truncated sector.
    Coefficients must cover every 1 <= k <= N; modes beyond N cannot move
    states inside the window."""
    if direction not in ("raising", "lowering"):
        raise ValueError(f"unknown direction {direction!r}")
    missing = [k for k in range(1, config.N + 1) if k not in coeffs]
    if missing:
        raise ValueError(f"missing transfer coefficients for k = {missing}")
    sgn = -1 if direction == "raising" else 1
    gen = None
    for k in range(1, config.N + 1):
        c = coeffs[k]
        if not c:
            continue
        term = j_op(sgn * k, config).scale(c)
        gen = term if gen is None else gen + term
    shift = RAISING if direction == "raising" else LOWERING
    acc = SectorOperator.identity(config)
    if gen is None:
        return SectorOperator(config, acc.basis, acc.rows, shift)
    gen = SectorOperator(config, gen.basis, gen.rows, shift)
    term = SectorOperator.identity(config)
    for n in range(1, config.N + 1):
        term = term.matmul(gen).scale(Fraction(1, n))
        if not term.rows:
            break
        acc = acc + term
    return SectorOperator(config, acc.basis, acc.rows, shift)


@lru_cache(maxsize=None)
def transfer_operator(p: Fraction, N: int, family: str, direction: str) -> SectorOperator:
    """Cached transfer exponentials; entries do not depend on the charge, so
    they are built once per (p, N) at s = 0 and reused across sectors."""
    cfg = SectorConfig(0, N, p)
    coeffs = transfer_weights(p, N, alternating=(family == "alternating"))
    return vertex_op(coeffs, direction, cfg)


@lru_cache(maxsize=None)
def transfer_pair(p: Fraction, N: int, family: str) -> SectorOperator:
    """G_- G_+ for the given coefficient family; intermediate energies in the
    product are bounded by min(row, col) weight, so window entries are exact."""
    gm = transfer_operator(p, N, family, "raising")
    gp = transfer_operator(p, N, family, "lowering")
    return gm.matmul(gp)


def with_config(op: SectorOperator, config: SectorConfig) -> SectorOperator:
    """Rebind a charge-independent operator to another sector config with the
    same cutoff and p."""
    if (op.config.N, op.config.p) != (config.N, config.p):
        raise ValueError("rebinding requires identical N and p")
    return SectorOperator(config, op.basis, op.rows, op.shift)
