"""Exact rational scalars, formal linear combinations, sparse matrices, homology.

Scalars are ``fractions.Fraction`` throughout: always in lowest terms,
positive denominator, no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator, Mapping

Rational = Fraction

__all__ = [
    "Rational",
    "rational",
    "rational_str",
    "LinComb",
    "lincomb_combine",
    "SparseMatrix",
    "rank",
    "ChainComplexSlice",
    "homology_dims",
    "NotAComplexError",
    "DegreeOutOfRangeError",
]


def rational(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact rational: {value!r}")


def rational_str(q: Fraction) -> str:
    """Serialize a Fraction as "p" or "p/q"; exactness survives round trips."""
    return str(q)


class LinComb:
    """A finite formal linear combination of hashable basis elements.

    Immutable; zero coefficients are never stored.  Equality is equality of
    the underlying coefficient maps.  Basis elements are expected to be in
    canonical form already: each basis type owns its canonicalization and
    exposes constructors returning LinComb values.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Hashable, Fraction] | None = None):
        clean = {}
        if terms:
            for key, val in terms.items():
                val = rational(val)
                if val:
                    clean[key] = val
        self._terms = clean

    @classmethod
    def zero(cls) -> "LinComb":
        return cls()

    @classmethod
    def of(cls, key: Hashable, coeff=1) -> "LinComb":
        return cls({key: rational(coeff)})

    def items(self) -> Iterator[tuple[Hashable, Fraction]]:
        return iter(self._terms.items())

    def keys(self):
        return self._terms.keys()

    def coeff(self, key: Hashable) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinComb) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "LinComb") -> "LinComb":
        out = dict(self._terms)
        for key, val in other._terms.items():
            acc = out.get(key, Fraction(0)) + val
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
        result = LinComb.__new__(LinComb)
        result._terms = out
        return result

    def __neg__(self) -> "LinComb":
        result = LinComb.__new__(LinComb)
        result._terms = {k: -v for k, v in self._terms.items()}
        return result

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def scale(self, s) -> "LinComb":
        s = rational(s)
        if not s:
            return LinComb.zero()
        result = LinComb.__new__(LinComb)
        result._terms = {k: v * s for k, v in self._terms.items()}
        return result

    def mapped(self, f: Callable[[Hashable], "LinComb"]) -> "LinComb":
        """Linear extension of a basis map f: key -> LinComb."""
        out = LinComb.zero()
        for key, val in self._terms.items():
            out = out + f(key).scale(val)
        return out

    def map_keys(self, f: Callable[[Hashable], Hashable]) -> "LinComb":
        """Linear extension of an injective-on-support basis relabelling."""
        out = {}
        for key, val in self._terms.items():
            new = f(key)
            acc = out.get(new, Fraction(0)) + val
            if acc:
                out[new] = acc
            else:
                out.pop(new, None)
        result = LinComb.__new__(LinComb)
        result._terms = out
        return result

    def __repr__(self) -> str:
        if not self._terms:
            return "LinComb(0)"
        bits = [f"{rational_str(v)}*{k!r}" for k, v in sorted(
            self._terms.items(), key=lambda kv: repr(kv[0]))]
        return "LinComb(" + " + ".join(bits) + ")"


def lincomb_combine(a: LinComb, b: LinComb, s) -> LinComb:
    """a + s*b, canonical (zero coefficients dropped)."""
    return a + b.scale(s)


class NotAComplexError(ValueError):
    """Raised when a composite differential fails to vanish."""


class DegreeOutOfRangeError(KeyError):
    """Raised when a degree outside the slice is requested."""


@dataclass(frozen=True)
class SparseMatrix:
    """Sparse exact rational matrix; no explicit zeros stored."""

    rows: int
    cols: int
    entries: tuple[tuple[tuple[int, int], Fraction], ...] = ()

    @classmethod
    def from_entries(cls, rows: int, cols: int,
                     entries: Mapping[tuple[int, int], Fraction]) -> "SparseMatrix":
        clean = []
        for (r, c), val in entries.items():
            val = rational(val)
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r},{c}) outside {rows}x{cols}")
            if val:
                clean.append(((r, c), val))
        clean.sort()
        return cls(rows, cols, tuple(clean))

    @classmethod
    def from_dense(cls, dense: Iterable[Iterable]) -> "SparseMatrix":
        dense = [list(row) for row in dense]
        rows = len(dense)
        cols = len(dense[0]) if dense else 0
        entries = {}
        for r, row in enumerate(dense):
            if len(row) != cols:
                raise ValueError("ragged dense matrix")
            for c, val in enumerate(row):
                val = rational(val)
                if val:
                    entries[(r, c)] = val
        return cls.from_entries(rows, cols, entries)

    def entry_map(self) -> dict[tuple[int, int], Fraction]:
        return dict(self.entries)

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), val in self.entries:
            out[r][c] = val
        return out

    def compose(self, other: "SparseMatrix") -> "SparseMatrix":
        """self @ other (apply other first)."""
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ "
                             f"{other.rows}x{other.cols}")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), val in self.entries:
            by_row.setdefault(r, []).append((c, val))
        by_col: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), val in other.entries:
            by_col.setdefault(c, []).append((r, val))
        other_rows: dict[int, dict[int, Fraction]] = {}
        for (r, c), val in other.entries:
            other_rows.setdefault(r, {})[c] = val
        acc: dict[tuple[int, int], Fraction] = {}
        for r, row in by_row.items():
            buf: dict[int, Fraction] = {}
            for k, val in row:
                for c, w in other_rows.get(k, {}).items():
                    buf[c] = buf.get(c, Fraction(0)) + val * w
            for c, val in buf.items():
                if val:
                    acc[(r, c)] = val
        return SparseMatrix.from_entries(self.rows, other.cols, acc)

    def is_zero(self) -> bool:
        return not self.entries


def rank(m: SparseMatrix) -> int:
    """Exact rank over the rationals by sparse fraction-exact elimination.

    Deterministic pivot choice: among remaining rows pick the sparsest (ties
    by original index), pivot on its smallest column.  Never floating point.
    """
    rows: list[dict[int, Fraction]] = []
    acc: dict[int, dict[int, Fraction]] = {}
    for (r, c), val in m.entries:
        acc.setdefault(r, {})[c] = val
    rows = [acc[r] for r in sorted(acc)]
    rk = 0
    while rows:
        piv_idx = min(range(len(rows)), key=lambda i: (len(rows[i]), i))
        pivot = rows.pop(piv_idx)
        piv_col = min(pivot)
        piv_val = pivot[piv_col]
        rk += 1
        reduced = []
        for row in rows:
            if piv_col in row:
                factor = row[piv_col] / piv_val
                new = dict(row)
                for c, val in pivot.items():
                    acc2 = new.get(c, Fraction(0)) - factor * val
                    if acc2:
                        new[c] = acc2
                    else:
                        new.pop(c, None)
                if new:
                    reduced.append(new)
            else:
                reduced.append(row)
        rows = reduced
    return rk


@dataclass(frozen=True)
class ChainComplexSlice:
    """An explicit truncated chain complex.

    ``basis[k]`` lists canonical basis elements of degree k for every k in
    ``degrees`` (an inclusive (lo, hi) pair); ``d[k]`` sends degree-k
    coordinates to degree-(k-1) coordinates and exists whenever both degrees
    are in range; ``complete[k]`` records that the degree-k basis is provably
    complete within the stated truncation bounds.
    """

    degrees: tuple[int, int]
    basis: Mapping[int, tuple]
    d: Mapping[int, SparseMatrix]
    complete: Mapping[int, bool] = field(default_factory=dict)

    def __post_init__(self):
        lo, hi = self.degrees
        for k in range(lo, hi + 1):
            if k not in self.basis:
                raise ValueError(f"missing basis for degree {k}")
        for k, mat in self.d.items():
            if not (lo < k <= hi):
                raise ValueError(f"differential at degree {k} out of range")
            if mat.cols != len(self.basis[k]) or mat.rows != len(self.basis[k - 1]):
                raise ValueError(f"differential shape mismatch at degree {k}")
        for k in range(lo + 2, hi + 1):
            if k in self.d and (k - 1) in self.d:
                if not self.d[k - 1].compose(self.d[k]).is_zero():
                    raise NotAComplexError(f"d∘d nonzero at degree {k}")

    def dim(self, k: int) -> int:
        lo, hi = self.degrees
        if not (lo <= k <= hi):
            raise DegreeOutOfRangeError(k)
        return len(self.basis[k])


def homology_dims(c: ChainComplexSlice) -> dict[int, tuple[int, bool]]:
    """Per-degree homology dimension and a reliability flag.

    dim H_k = dim ker d_k - rank d_{k+1}; reliable only when degrees k-1, k,
    k+1 all exist in the slice and carry complete bases.  d∘d = 0 is enforced
    at slice construction; a violation raises rather than warns.
    """
    lo, hi = c.degrees
    ranks: dict[int, int] = {}
    for k, mat in c.d.items():
        ranks[k] = rank(mat)
    out: dict[int, tuple[int, bool]] = {}
    for k in range(lo, hi + 1):
        n_k = len(c.basis[k])
        rank_in = ranks.get(k, 0)
        rank_out = ranks.get(k + 1, 0)
        dim_h = (n_k - rank_in) - rank_out
        reliable = all(
            lo <= j <= hi and c.complete.get(j, False)
            for j in (k - 1, k, k + 1))
        out[k] = (dim_h, reliable)
    return out
