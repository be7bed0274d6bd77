"""Sparse matrix-unit calculus on finite tensor stages of UHF algebras.

A stage is a tensor product M_{a_1} (x) ... (x) M_{a_n} of full complex
matrix algebras, recorded by its :class:`Signature` ``(a_1, ..., a_n)``.
Elements are sparse linear combinations of elementary tensors of matrix
units E_{jk}; every structural map (multiplication, unital embedding,
Kronecker coproduct, slot permutation) acts on the integer index data
exactly, so floating point enters only through the coefficients.

Index conventions
-----------------
Matrix-unit indices are 1-based on the whole public surface and 0-based
only inside the arithmetic.  The Kronecker product fixes the lexicographic
composition of indices: the unit E_{jk} of M_{ab} corresponds to
E_{j'k'} (x) E_{j''k''} in M_a (x) M_b with

    j = b*(j' - 1) + j'',        k = b*(k' - 1) + k''.

:func:`coproduct_phi` splits indices with this rule factor by factor, and
:func:`to_dense` materializes elements through ``numpy.kron``, so the two
conventions agree by construction.  The codomain of the coproduct is kept
as an element over the concatenated signature, first block before second.
"""

from __future__ import annotations

import itertools
import numbers
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import IndexRangeError, ResourceGuardError, SignatureError

__all__ = [
    "COEFF_PRUNE_TOL",
    "COMPARE_TOL",
    "DENSE_DIM_GUARD",
    "Signature",
    "MatrixUnitIndex",
    "AlgebraElement",
    "as_signature",
    "matrix_unit",
    "identity",
    "zero",
    "elem_add",
    "elem_scale",
    "elem_adjoint",
    "elem_mul",
    "elem_tensor",
    "embed_psi",
    "insert_identity_slot",
    "split_slot",
    "permute_slots",
    "coproduct_phi",
    "coproduct_phi_block",
    "product_phi_inverse",
    "kron_box",
    "to_dense",
    "from_dense",
    "block_permutation",
    "all_matrix_units",
    "random_element",
]

# Coefficients at or below this magnitude are dropped from canonical form.
COEFF_PRUNE_TOL = 1e-14
# Default tolerance for numerical comparisons of coefficients/entries.
COMPARE_TOL = 1e-12
# Largest total dimension a dense materialization will allocate.
DENSE_DIM_GUARD = 4096


@dataclass(frozen=True)
class Signature:
    """Ordered factor dimensions (a_1, ..., a_n) of a stage, each >= 2."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) < 1:
            raise SignatureError("signature must have at least one factor")
        for pos, d in enumerate(dims, start=1):
            if d < 2:
                raise SignatureError(
                    f"factor dimension {d} at position {pos} is < 2"
                )
        object.__setattr__(self, "dims", dims)

    @property
    def level(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        """Dimension of the stage as one matrix algebra, prod(a_i)."""
        out = 1
        for d in self.dims:
            out *= d
        return out

    def concat(self, other) -> "Signature":
        return Signature(self.dims + as_signature(other).dims)

    def product(self, other) -> "Signature":
        """Entrywise product (a_1*b_1, ..., a_n*b_n); levels must match."""
        other = as_signature(other)
        if self.level != other.level:
            raise SignatureError(
                f"levels differ: {self.level} vs {other.level}"
            )
        return Signature(tuple(a * b for a, b in zip(self.dims, other.dims)))

    def __iter__(self):
        return iter(self.dims)

    def __len__(self):
        return len(self.dims)


def as_signature(sig) -> Signature:
    """Coerce a Signature, an int, or an iterable of ints to a Signature."""
    if isinstance(sig, Signature):
        return sig
    if isinstance(sig, numbers.Integral):
        return Signature((int(sig),))
    return Signature(tuple(sig))


class MatrixUnitIndex(NamedTuple):
    """Row/column multi-indices (1-based) of one elementary tensor of units."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]


def _as_multi_index(value) -> tuple[int, ...]:
    if isinstance(value, numbers.Integral):
        return (int(value),)
    return tuple(int(v) for v in value)


def _check_index(sig: Signature, rows, cols) -> MatrixUnitIndex:
    rows = _as_multi_index(rows)
    cols = _as_multi_index(cols)
    if len(rows) != sig.level or len(cols) != sig.level:
        raise IndexRangeError(
            f"index length {len(rows)}/{len(cols)} does not match level {sig.level}"
        )
    for pos, (j, k, d) in enumerate(zip(rows, cols, sig.dims), start=1):
        if not 1 <= j <= d:
            raise IndexRangeError(
                f"row index {j} exceeds dimension {d} at factor {pos}"
            )
        if not 1 <= k <= d:
            raise IndexRangeError(
                f"column index {k} exceeds dimension {d} at factor {pos}"
            )
    return MatrixUnitIndex(rows, cols)


class AlgebraElement:
    """Sparse element of a tensor stage, kept in canonical form.

    Canonical form merges duplicate indices and drops coefficients of
    magnitude <= ``prune_tol``.  Instances are immutable; all operations
    return new elements.  ``*`` is the algebra product (or scalar scaling),
    ``+``/``-`` the linear structure, :meth:`adjoint` the *-operation.
    """

    __slots__ = ("sig", "_terms")

    def __init__(self, sig, terms=None, *, prune_tol: float = COEFF_PRUNE_TOL,
                 validate: bool = True):
        sig = as_signature(sig)
        merged: dict[MatrixUnitIndex, complex] = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for idx, coeff in items:
                if validate:
                    idx = _check_index(sig, idx[0], idx[1])
                elif not isinstance(idx, MatrixUnitIndex):
                    idx = MatrixUnitIndex(tuple(idx[0]), tuple(idx[1]))
                merged[idx] = merged.get(idx, 0j) + complex(coeff)
        object.__setattr__(self, "sig", sig)
        object.__setattr__(
            self,
            "_terms",
            {idx: c for idx, c in merged.items() if abs(c) > prune_tol},
        )

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElement is immutable")

    @property
    def terms(self):
        """Read-only map MatrixUnitIndex -> coefficient."""
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def sorted_terms(self) -> list[tuple[MatrixUnitIndex, complex]]:
        """Terms sorted lexicographically by (rows, cols)."""
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def _require_same_sig(self, other: "AlgebraElement"):
        if self.sig != other.sig:
            raise SignatureError(
                f"signature mismatch: {self.sig.dims} vs {other.sig.dims}"
            )

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._require_same_sig(other)
        out = dict(self._terms)
        for idx, c in other._terms.items():
            out[idx] = out.get(idx, 0j) + c
        return AlgebraElement(self.sig, out, validate=False)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-1.0) * other

    def __neg__(self):
        return (-1.0) * self

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._require_same_sig(other)
            by_rows: dict[tuple[int, ...], list] = {}
            for (r2, c2), v2 in other._terms.items():
                by_rows.setdefault(r2, []).append((c2, v2))
            out: dict[MatrixUnitIndex, complex] = {}
            for (r1, c1), v1 in self._terms.items():
                for c2, v2 in by_rows.get(c1, ()):
                    idx = MatrixUnitIndex(r1, c2)
                    out[idx] = out.get(idx, 0j) + v1 * v2
            return AlgebraElement(self.sig, out, validate=False)
        if isinstance(other, numbers.Number):
            c = complex(other)
            return AlgebraElement(
                self.sig,
                {idx: c * v for idx, v in self._terms.items()},
                validate=False,
            )
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Number):
            return self * other
        return NotImplemented

    def adjoint(self) -> "AlgebraElement":
        """The *-operation: swap rows and columns, conjugate coefficients."""
        return AlgebraElement(
            self.sig,
            {MatrixUnitIndex(c, r): v.conjugate()
             for (r, c), v in self._terms.items()},
            validate=False,
        )

    def canonicalize(self, prune_tol: float = COEFF_PRUNE_TOL) -> "AlgebraElement":
        """Re-run canonicalization (merge + prune); idempotent."""
        return AlgebraElement(self.sig, self._terms, prune_tol=prune_tol,
                              validate=False)

    def allclose(self, other: "AlgebraElement", tol: float = COMPARE_TOL) -> bool:
        if self.sig != other.sig:
            return False
        keys = set(self._terms) | set(other._terms)
        return all(
            abs(self._terms.get(k, 0j) - other._terms.get(k, 0j)) <= tol
            for k in keys
        )

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.sig == other.sig and self._terms == other._terms

    __hash__ = None

    def to_dense(self, *, guard: int = DENSE_DIM_GUARD) -> np.ndarray:
        return to_dense(self, guard=guard)

    def __repr__(self):
        return (f"AlgebraElement(sig={self.sig.dims}, "
                f"terms={len(self._terms)})")


def matrix_unit(sig, rows, cols) -> AlgebraElement:
    """Elementary tensor of matrix units with coefficient one.

    ``rows``/``cols`` are 1-based multi-indices (ints allowed at level 1).
    Raises :class:`IndexRangeError` naming the offending factor position.
    """
    sig = as_signature(sig)
    idx = _check_index(sig, rows, cols)
    return AlgebraElement(sig, {idx: 1.0}, validate=False)


def identity(sig) -> AlgebraElement:
    """The unit of the stage: sum of all diagonal elementary tensors."""
    sig = as_signature(sig)
    terms = {
        MatrixUnitIndex(diag, diag): 1.0
        for diag in itertools.product(*(range(1, d + 1) for d in sig.dims))
    }
    return AlgebraElement(sig, terms, validate=False)


def zero(sig) -> AlgebraElement:
    return AlgebraElement(as_signature(sig))


def elem_add(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x + y


def elem_scale(c, x: AlgebraElement) -> AlgebraElement:
    return x * c


def elem_adjoint(x: AlgebraElement) -> AlgebraElement:
    return x.adjoint()


def elem_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Algebra product, factorwise E_{jk} E_{lm} = delta_{kl} E_{jm}."""
    return x * y


def elem_tensor(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Tensor product over the concatenated signature."""
    out: dict[MatrixUnitIndex, complex] = {}
    for (r1, c1), v1 in x.terms.items():
        for (r2, c2), v2 in y.terms.items():
            out[MatrixUnitIndex(r1 + r2, c1 + c2)] = v1 * v2
    return AlgebraElement(x.sig.concat(y.sig), out, validate=False)


def insert_identity_slot(x: AlgebraElement, position: int, dim: int) -> AlgebraElement:
    """Tensor an identity factor of size ``dim`` into slot ``position``.

    Each term E_{j,k} becomes sum_m E_{j,k} with E^{(dim)}_{mm} spliced in
    at ``position`` (0-based slot index; ``position == level`` appends).
    """
    if dim < 2:
        raise SignatureError(f"inserted dimension {dim} is < 2")
    level = x.sig.level
    if not 0 <= position <= level:
        raise SignatureError(f"slot position {position} outside 0..{level}")
    new_sig = Signature(
        x.sig.dims[:position] + (dim,) + x.sig.dims[position:]
    )
    out: dict[MatrixUnitIndex, complex] = {}
    for (r, c), v in x.terms.items():
        for m in range(1, dim + 1):
            idx = MatrixUnitIndex(
                r[:position] + (m,) + r[position:],
                c[:position] + (m,) + c[position:],
            )
            out[idx] = v
    return AlgebraElement(new_sig, out, validate=False)


def embed_psi(x: AlgebraElement, next_dim: int) -> AlgebraElement:
    """Unital embedding A -> A (x) I into the stage extended by ``next_dim``."""
    return insert_identity_slot(x, x.sig.level, next_dim)


def split_slot(x: AlgebraElement, position: int, left_dim: int,
               right_dim: int) -> AlgebraElement:
    """Recode slot ``position`` of size left*right into two adjacent slots.

    An index j in the fused slot becomes (j', j'') with
    j = right_dim*(j' - 1) + j''.
    """
    dims = x.sig.dims
    if not 0 <= position < len(dims):
        raise SignatureError(f"slot position {position} outside 0..{len(dims) - 1}")
    if dims[position] != left_dim * right_dim:
        raise SignatureError(
            f"slot {position} has dimension {dims[position]}, "
            f"not {left_dim}*{right_dim}"
        )
    new_sig = Signature(
        dims[:position] + (left_dim, right_dim) + dims[position + 1:]
    )
    out: dict[MatrixUnitIndex, complex] = {}
    for (r, c), v in x.terms.items():
        jq, jr = divmod(r[position] - 1, right_dim)
        kq, kr = divmod(c[position] - 1, right_dim)
        idx = MatrixUnitIndex(
            r[:position] + (jq + 1, jr + 1) + r[position + 1:],
            c[:position] + (kq + 1, kr + 1) + c[position + 1:],
        )
        out[idx] = v
    return AlgebraElement(new_sig, out, validate=False)


def permute_slots(x: AlgebraElement, perm: Sequence[int]) -> AlgebraElement:
    """Reorder tensor slots; ``perm[new_position] = old_position``."""
    level = x.sig.level
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(level)):
        raise SignatureError(f"{perm} is not a permutation of 0..{level - 1}")
    new_sig = Signature(tuple(x.sig.dims[p] for p in perm))
    out: dict[MatrixUnitIndex, complex] = {}
    for (r, c), v in x.terms.items():
        idx = MatrixUnitIndex(
            tuple(r[p] for p in perm), tuple(c[p] for p in perm)
        )
        out[idx] = v
    return AlgebraElement(new_sig, out, validate=False)


def _split1(j: int, right: int) -> tuple[int, int]:
    # 1-based index split for one fused slot
    q, r = divmod(j - 1, right)
    return q + 1, r + 1


def coproduct_phi(x: AlgebraElement, a, b) -> AlgebraElement:
    """Kronecker coproduct: recode a stage over (a_i*b_i) as first-block (x)
    second-block over the concatenated signature (a_1..a_n, b_1..b_n).

    Each index j_i in {1, ..., a_i*b_i} splits as j_i = b_i*(j'_i - 1) + j''_i;
    the output term carries rows (j'_1..j'_n, j''_1..j''_n) and likewise for
    columns, with the coefficient unchanged.  This is a *-isomorphism onto the
    concatenated stage, inverse to the factorwise Kronecker product.
    """
    a = as_signature(a)
    b = as_signature(b)
    if x.sig != a.product(b):
        raise SignatureError(
            f"signature {x.sig.dims} is not the entrywise product of "
            f"{a.dims} and {b.dims}"
        )
    bd = b.dims
    out: dict[MatrixUnitIndex, complex] = {}
    for (r, c), v in x.terms.items():
        ra, rb, ca, cb = [], [], [], []
        for j, k, bi in zip(r, c, bd):
            jq, jr = _split1(j, bi)
            kq, kr = _split1(k, bi)
            ra.append(jq)
            rb.append(jr)
            ca.append(kq)
            cb.append(kr)
        idx = MatrixUnitIndex(tuple(ra) + tuple(rb), tuple(ca) + tuple(cb))
        out[idx] = v
    return AlgebraElement(a.concat(b), out, validate=False)


def coproduct_phi_block(x: AlgebraElement, start: int, count: int,
                        a, b) -> AlgebraElement:
    """Apply the coproduct to slots [start, start+count), leaving the rest.

    The split block comes out in block order: the first-factor slots occupy
    positions start..start+count-1, the second-factor slots follow, and all
    other slots keep their relative places.  Composed from :func:`split_slot`
    and :func:`permute_slots`, so it is exact on indices.
    """
    a = as_signature(a)
    b = as_signature(b)
    if a.level != count or b.level != count:
        raise SignatureError("factor signatures must match the block length")
    y = x
    for i in range(count):
        y = split_slot(y, start + 2 * i, a.dims[i], b.dims[i])
    level = y.sig.level
    perm = list(range(start))
    perm += [start + 2 * i for i in range(count)]
    perm += [start + 2 * i + 1 for i in range(count)]
    perm += list(range(start + 2 * count, level))
    return permute_slots(y, perm)


def product_phi_inverse(y: AlgebraElement, level: int) -> AlgebraElement:
    """Inverse of :func:`coproduct_phi` given the block split point.

    ``y`` lives over a concatenated signature (a_1..a_n, b_1..b_n) with
    n = ``level``; the result lives over (a_1*b_1, ..., a_n*b_n).
    """
    dims = y.sig.dims
    if len(dims) != 2 * level:
        raise SignatureError(
            f"signature length {len(dims)} does not split into two blocks "
            f"of {level}"
        )
    b = dims[level:]
    out: dict[MatrixUnitIndex, complex] = {}
    for (r, c), v in y.terms.items():
        rows = tuple(
            bi * (r[i] - 1) + r[level + i] for i, bi in enumerate(b)
        )
        cols = tuple(
            bi * (c[i] - 1) + c[level + i] for i, bi in enumerate(b)
        )
        out[MatrixUnitIndex(rows, cols)] = v
    fused = Signature(tuple(ai * bi for ai, bi in zip(dims[:level], b)))
    return AlgebraElement(fused, out, validate=False)


def kron_box(A, B) -> np.ndarray:
    """Kronecker product of dense matrices, lexicographic index convention:
    entry (m(i-1)+i', m(j-1)+j') of the result is A_ij * B_i'j' with
    m = dim(B)."""
    return np.kron(np.asarray(A, dtype=complex), np.asarray(B, dtype=complex))


def to_dense(x: AlgebraElement, *, guard: int = DENSE_DIM_GUARD) -> np.ndarray:
    """Materialize an element as one prod(a_i) x prod(a_i) complex matrix.

    The matrix of an elementary tensor is the Kronecker chain of its unit
    factors, so this is the brute-force oracle against which the sparse
    index maps are checked.  Guarded: refuses dimensions above ``guard``.
    """
    D = x.sig.total_dim
    if D > guard:
        raise ResourceGuardError(
            f"dense dimension {D} exceeds guard {guard}"
        )
    out = np.zeros((D, D), dtype=complex)
    for (r, c), v in x.terms.items():
        block = np.array([[v]], dtype=complex)
        for j, k, d in zip(r, c, x.sig.dims):
            unit = np.zeros((d, d), dtype=complex)
            unit[j - 1, k - 1] = 1.0
            block = np.kron(block, unit)
        out += block
    return out


def _strides(dims: Sequence[int]) -> list[int]:
    # lexicographic (row-major) strides for a multi-index over dims
    strides = [1] * len(dims)
    for i in range(len(dims) - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]
    return strides


def _linear_index(multi: Sequence[int], strides: Sequence[int]) -> int:
    return sum((j - 1) * s for j, s in zip(multi, strides))


def from_dense(matrix, sig, *, prune_tol: float = COEFF_PRUNE_TOL) -> AlgebraElement:
    """Expand a dense matrix over ``sig`` in elementary tensors of units.

    Exact inverse of :func:`to_dense` up to coefficient pruning.
    """
    sig = as_signature(sig)
    m = np.asarray(matrix, dtype=complex)
    D = sig.total_dim
    if m.shape != (D, D):
        raise SignatureError(
            f"matrix shape {m.shape} does not match total dimension {D}"
        )
    ranges = [range(1, d + 1) for d in sig.dims]
    strides = _strides(sig.dims)
    out: dict[MatrixUnitIndex, complex] = {}
    for rows in itertools.product(*ranges):
        i = _linear_index(rows, strides)
        for cols in itertools.product(*ranges):
            v = m[i, _linear_index(cols, strides)]
            if abs(v) > prune_tol:
                out[MatrixUnitIndex(rows, cols)] = complex(v)
    return AlgebraElement(sig, out, prune_tol=prune_tol, validate=False)


def block_permutation(a, b, *, guard: int = DENSE_DIM_GUARD) -> np.ndarray:
    """Permutation matrix P with dense(coproduct(x)) = P dense(x) P^T.

    P re-sorts the interleaved factor basis (a_1, b_1, ..., a_n, b_n) of the
    fused stage into the block basis (a_1..a_n, b_1..b_n); P P^T = I.
    """
    a = as_signature(a)
    b = as_signature(b)
    if a.level != b.level:
        raise SignatureError(
            f"levels differ: {a.level} vs {b.level}"
        )
    fused = a.product(b)
    D = fused.total_dim
    if D > guard:
        raise ResourceGuardError(f"dense dimension {D} exceeds guard {guard}")
    fused_strides = _strides(fused.dims)
    concat_dims = a.dims + b.dims
    concat_strides = _strides(concat_dims)
    P = np.zeros((D, D), dtype=complex)
    for multi in itertools.product(*(range(1, d + 1) for d in fused.dims)):
        old = _linear_index(multi, fused_strides)
        left = [_split1(j, bi)[0] for j, bi in zip(multi, b.dims)]
        right = [_split1(j, bi)[1] for j, bi in zip(multi, b.dims)]
        new = _linear_index(tuple(left) + tuple(right), concat_strides)
        P[new, old] = 1.0
    return P


def all_matrix_units(sig) -> Iterator[MatrixUnitIndex]:
    """All matrix-unit indices of a stage, rows-major lexicographic order."""
    sig = as_signature(sig)
    ranges = [range(1, d + 1) for d in sig.dims]
    for rows in itertools.product(*ranges):
        for cols in itertools.product(*ranges):
            yield MatrixUnitIndex(rows, cols)


def random_element(sig, rng=None, n_terms: int = 8) -> AlgebraElement:
    """Random sparse element: ``n_terms`` uniform indices with complex
    Gaussian coefficients.  Deterministic for a fixed seed."""
    sig = as_signature(sig)
    rng = np.random.default_rng(rng)
    terms: dict[MatrixUnitIndex, complex] = {}
    for _ in range(n_terms):
        rows = tuple(int(rng.integers(1, d + 1)) for d in sig.dims)
        cols = tuple(int(rng.integers(1, d + 1)) for d in sig.dims)
        coeff = complex(rng.standard_normal(), rng.standard_normal())
        idx = MatrixUnitIndex(rows, cols)
        terms[idx] = terms.get(idx, 0j) + coeff
    return AlgebraElement(sig, terms, validate=False)
