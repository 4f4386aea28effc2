# src/sullivan_tc/_linalg.py
"""Sparse exact elimination over QQ on top of sympy's DomainMatrix."""

__all__ = [
    "SparseVector",
    "independent_vectors",
    "nullspace",
    "pivot_inverse",
    "rank",
    "solve",
]

from collections.abc import Mapping, Sequence
from typing import Any

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

SparseVector = dict[int, Any]


def _from_columns(columns: Sequence[Mapping[int, Any]], nrows: int) -> DomainMatrix:
    rows: dict[int, dict[int, Any]] = {}
    for j, column in enumerate(columns):
        for i, value in column.items():
            if value:
                rows.setdefault(i, {})[j] = value
    return DomainMatrix(rows, (nrows, len(columns)), QQ)


def _from_rows(rows: Sequence[Mapping[int, Any]], ncols: int) -> DomainMatrix:
    data = {i: {j: v for j, v in row.items() if v} for i, row in enumerate(rows)}
    return DomainMatrix({i: r for i, r in data.items() if r}, (len(rows), ncols), QQ)


def _rows_of(matrix: DomainMatrix) -> list[SparseVector]:
    rows: list[SparseVector] = [{} for _ in range(matrix.shape[0])]
    for (i, j), value in matrix.to_dok().items():
        if value:
            rows[i][j] = value
    return rows


def rank(vectors: Sequence[Mapping[int, Any]], dimension: int) -> int:
    """Rank of a family of sparse vectors living in QQ^dimension."""
    live = [v for v in vectors if any(v.values())]
    if not live or dimension == 0:
        return 0
    return _from_columns(live, dimension).rank()


def independent_vectors(vectors: Sequence[Mapping[int, Any]], dimension: int) -> list[int]:
    """Indices of the earliest vectors forming a basis of their span."""
    if not vectors or dimension == 0:
        return []
    if not any(any(v.values()) for v in vectors):
        return []
    _, pivots = _from_columns(vectors, dimension).rref()
    return list(pivots)


def nullspace(columns: Sequence[Mapping[int, Any]], nrows: int) -> list[SparseVector]:
    """
    Basis of the kernel of the matrix whose j-th column is ``columns[j]``.

    Basis vectors come from the reduced row echelon form: each has a 1 at one
    free column and zeros at the other free columns.
    """
    ncols = len(columns)
    if ncols == 0:
        return []
    if nrows == 0 or not any(any(c.values()) for c in columns):
        return [{j: QQ.one} for j in range(ncols)]
    reduced, pivots = _from_columns(columns, nrows).rref()
    kernel = reduced.nullspace_from_rref(pivots)
    return [row for row in _rows_of(kernel) if row]


def pivot_inverse(
    rows: Sequence[Mapping[int, Any]], ncols: int
) -> tuple[list[int], list[SparseVector]]:
    """
    Coordinate map for linearly independent rows ``S`` (k x ncols).

    Returns ``(Q, K)`` where ``Q`` are k pivot columns with ``S[:, Q]``
    invertible and ``K`` its inverse as sparse rows. For ``v`` in the row
    space, the coordinates are ``c_i = sum_q v[Q[q]] * K[q][i]``.
    """
    if not rows:
        return [], []
    _, pivots = _from_rows(rows, ncols).rref()
    if len(pivots) != len(rows):
        raise ValueError("Rows are linearly dependent")
    square = _from_rows(
        [{q: row.get(column, QQ.zero) for q, column in enumerate(pivots)} for row in rows],
        len(pivots),
    )
    try:
        inverse = square.to_dense().inv()
    except DMNonInvertibleMatrixError as exc:
        raise ValueError("Pivot submatrix is singular") from exc
    return list(pivots), _rows_of(inverse)


def solve(
    columns: Sequence[Mapping[int, Any]], target: Mapping[int, Any], nrows: int
) -> SparseVector | None:
    """
    Reduced-echelon particular solution of ``sum_j x_j columns[j] = target``.

    Free variables are set to zero. Returns None when the system is
    inconsistent.
    """
    if not any(target.values()):
        return {}
    if not columns or nrows == 0:
        return None
    augmented = [*columns, target]
    reduced, pivots = _from_columns(augmented, nrows).rref()
    last = len(columns)
    if last in pivots:
        return None
    solution: SparseVector = {}
    rows = _rows_of(reduced)
    for row_index, column in enumerate(pivots):
        value = rows[row_index].get(last)
        if value:
            solution[column] = value
    return solution
