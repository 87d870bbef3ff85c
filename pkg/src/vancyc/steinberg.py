"""Adjoint quotients of sl_2 and sl_3: characteristic coefficients, the
Lie-Poisson structure, rank drops at subregular points, and the A_1 block
in a subregular slice.

Characteristic polynomial convention, fixed here:

  det(lam * Id - X) = lam^(r+1) + s_1 lam^(r-1) + ... + s_r,

so the quotient map sends a traceless matrix to the coefficient tuple
(s_1, ..., s_r); for r = 2 these are (sum of principal 2x2 minors, -det X).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import (PolyError, PolyMatrix, Polynomial, determinant_fraction_free,
                   rational_inverse, rational_rank, rational_solve, resultant,
                   squarefree_part_bivariate, variables)
from .symplectic import PoissonStructure, casimir_check


# ---------------------------------------------------------------------------
# Lie algebra data with verified structure constants
# ---------------------------------------------------------------------------

def _mat_zero(n: int) -> list[list[Fraction]]:
    return [[Fraction(0)] * n for _ in range(n)]


def _mat_unit(n: int, i: int, j: int) -> list[list[Fraction]]:
    m = _mat_zero(n)
    m[i][j] = Fraction(1)
    return m


def _mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def _commutator(a, b):
    return _mat_sub(_mat_mul(a, b), _mat_mul(b, a))


@dataclass(frozen=True)
class LieAlgebraDatum:
    """A matrix Lie algebra basis with its expanded structure constants.

    brackets[i][j] holds the coefficients of [b_i, b_j] over the basis.
    Antisymmetry and the Jacobi identity are verified at construction.
    """

    labels: tuple[str, ...]
    coordinate_names: tuple[str, ...]
    basis: tuple[tuple[tuple[Fraction, ...], ...], ...]
    brackets: tuple[tuple[tuple[Fraction, ...], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.labels)

    @classmethod
    def from_basis(cls, labels: Sequence[str],
                   basis: Sequence[Sequence[Sequence[Fraction]]],
                   coordinate_names: Sequence[str] | None = None) -> "LieAlgebraDatum":
        labels = tuple(labels)
        if coordinate_names is None:
            coordinate_names = tuple(f"x_{lbl}" for lbl in labels)
        else:
            coordinate_names = tuple(coordinate_names)
        dim = len(labels)
        if len(basis) != dim or len(coordinate_names) != dim:
            raise PolyError("labels, coordinates and basis must have equal length")
        mats = [[[Fraction(x) for x in row] for row in m] for m in basis]
        flat = [[c for row in m for c in row] for m in mats]
        columns = list(zip(*flat))  # (n*n) x dim
        structure = []
        for i in range(dim):
            row = []
            for j in range(dim):
                target = [c for r in _commutator(mats[i], mats[j]) for c in r]
                coeffs = rational_solve(columns, target)
                row.append(tuple(coeffs))
            structure.append(tuple(row))
        datum = cls(labels, coordinate_names,
                    tuple(tuple(tuple(r) for r in m) for m in mats),
                    tuple(structure))
        datum._verify()
        return datum

    def _verify(self):
        c = self.brackets
        dim = self.dim
        for i in range(dim):
            for j in range(dim):
                if any(c[i][j][k] != -c[j][i][k] for k in range(dim)):
                    raise PolyError(f"structure constants not antisymmetric at ({i},{j})")
        for i in range(dim):
            for j in range(i + 1, dim):
                for k in range(j + 1, dim):
                    for l in range(dim):
                        total = Fraction(0)
                        for m in range(dim):
                            total += (c[i][j][m] * c[m][k][l]
                                      + c[j][k][m] * c[m][i][l]
                                      + c[k][i][m] * c[m][j][l])
                        if total:
                            raise PolyError(
                                f"Jacobi identity fails on basis triple ({i},{j},{k})")


def sl_structure(n: int) -> LieAlgebraDatum:
    """sl_2 in the (h, e, f) basis or sl_3 in the elementary-matrix basis."""
    if n == 2:
        h = _mat_sub(_mat_unit(2, 0, 0), _mat_unit(2, 1, 1))
        e = _mat_unit(2, 0, 1)
        f = _mat_unit(2, 1, 0)
        return LieAlgebraDatum.from_basis(("h", "e", "f"), (h, e, f))
    if n == 3:
        labels = []
        mats = []
        for (i, j) in ((0, 1), (0, 2), (1, 2), (1, 0), (2, 0), (2, 1)):
            labels.append(f"E{i + 1}{j + 1}")
            mats.append(_mat_unit(3, i, j))
        labels += ["H1", "H2"]
        mats.append(_mat_sub(_mat_unit(3, 0, 0), _mat_unit(3, 1, 1)))
        mats.append(_mat_sub(_mat_unit(3, 1, 1), _mat_unit(3, 2, 2)))
        return LieAlgebraDatum.from_basis(labels, mats)
    raise PolyError("only sl_2 and sl_3 are constructed here")


def _entry_positions(n: int) -> list[tuple[int, int]]:
    """Row-major free entries of a traceless n x n matrix (last diagonal dropped)."""
    return [(i, j) for i in range(n) for j in range(n) if not (i == j == n - 1)]


def entry_coordinate_structure(n: int) -> LieAlgebraDatum:
    """sl_n in the basis dual (under the trace form) to the matrix entries.

    The coordinate x_ij then reads off the (i, j) entry of a traceless
    matrix, and the Lie-Poisson bracket of entry coordinates is
    {x_ij, x_kl} = delta_il x_kj - delta_kj x_il.
    """
    labels = []
    mats = []
    for (i, j) in _entry_positions(n):
        labels.append(f"x{i + 1}{j + 1}")
        if i == j:
            m = _mat_unit(n, i, i)
            for d in range(n):
                m[d][d] -= Fraction(1, n)
            mats.append(m)
        else:
            mats.append(_mat_unit(n, j, i))
    return LieAlgebraDatum.from_basis(labels, mats, coordinate_names=labels)


def kks_structure(datum: LieAlgebraDatum) -> PoissonStructure:
    """Lie-Poisson structure: Pi_ij = sum_k c_ij^k x_k over the dual coordinates."""
    ambient = datum.coordinate_names
    coords = variables(ambient)
    rows = []
    for i in range(datum.dim):
        row = []
        for j in range(datum.dim):
            entry = Polynomial.zero(ambient)
            for k, coeff in enumerate(datum.brackets[i][j]):
                if coeff:
                    entry = entry + coords[k].scale(coeff)
            row.append(entry)
        rows.append(row)
    return PoissonStructure(ambient, PolyMatrix.from_rows(rows))


# ---------------------------------------------------------------------------
# The adjoint-quotient (characteristic coefficient) map
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SteinbergMap:
    """Characteristic coefficients of a generic traceless (r+1) x (r+1) matrix."""

    rank: int
    ambient: tuple[str, ...]
    generic_matrix: PolyMatrix
    components: tuple[Polynomial, ...]


def steinberg_map(r: int) -> SteinbergMap:
    """Coefficient map (s_1, ..., s_r) for sl_{r+1}, r in {1, 2}."""
    if r not in (1, 2):
        raise PolyError("only ranks 1 and 2 are supported")
    n = r + 1
    positions = _entry_positions(n)
    ambient = tuple(f"x{i + 1}{j + 1}" for (i, j) in positions)
    entries = [[None] * n for _ in range(n)]
    for (i, j) in positions:
        entries[i][j] = Polynomial.variable(ambient, f"x{i + 1}{j + 1}")
    last = Polynomial.zero(ambient)
    for d in range(n - 1):
        last = last - entries[d][d]
    entries[n - 1][n - 1] = last
    generic = PolyMatrix.from_rows(entries)
    lam_ambient = ambient + ("lam",)
    lam = Polynomial.variable(lam_ambient, "lam")
    char_rows = []
    for i in range(n):
        row = []
        for j in range(n):
            e = -entries[i][j].extend(lam_ambient)
            if i == j:
                e = e + lam
            row.append(e)
        char_rows.append(row)
    char = determinant_fraction_free(PolyMatrix.from_rows(char_rows))
    if not char.coefficient_in("lam", n - 1).is_zero():
        raise PolyError("generic matrix is not traceless")
    comps = tuple(char.coefficient_in("lam", d) for d in range(n - 2, -1, -1))
    return SteinbergMap(r, ambient, generic, comps)


def casimir_components_check(s: SteinbergMap, structure: PoissonStructure) -> bool:
    """Every characteristic coefficient is a Casimir of the Lie-Poisson bracket."""
    if structure.ambient != s.ambient:
        raise PolyError("Poisson structure must live on the map's entry coordinates")
    return all(casimir_check(c, structure) for c in s.components)


def steinberg_kks(r: int) -> PoissonStructure:
    """Lie-Poisson structure on the entry coordinates used by steinberg_map(r)."""
    return kks_structure(entry_coordinate_structure(r + 1))


def steinberg_discriminant_multiplicity(r: int) -> int:
    """Order at 0 of the reduced lam-discriminant of the characteristic polynomial."""
    if r == 1:
        ambient = ("s1", "lam")
        lam = Polynomial.variable(ambient, "lam")
        s1 = Polynomial.variable(ambient, "s1")
        p = lam ** 2 + s1
    elif r == 2:
        ambient = ("s1", "s2", "lam")
        lam = Polynomial.variable(ambient, "lam")
        s1 = Polynomial.variable(ambient, "s1")
        s2 = Polynomial.variable(ambient, "s2")
        p = lam ** 3 + s1 * lam + s2
    else:
        raise PolyError("only ranks 1 and 2 are supported")
    res = resultant(p, p.partial_derivative("lam"), "lam")
    return squarefree_part_bivariate(res).order_at_origin()


def jacobian_rank_at(s: SteinbergMap,
                     point_matrix: Sequence[Sequence[Fraction]]) -> int:
    """Rank of the differential of the coefficient map at a traceless matrix."""
    n = s.rank + 1
    rows = [[Fraction(x) for x in row] for row in point_matrix]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise PolyError(f"point must be a {n} x {n} matrix")
    if sum(rows[i][i] for i in range(n)):
        raise PolyError("point matrix must be traceless")
    point = {f"x{i + 1}{j + 1}": rows[i][j] for (i, j) in _entry_positions(n)}
    jac = [[c.partial_derivative(v).evaluate(point) for v in s.ambient]
           for c in s.components]
    return rational_rank(jac)


def conjugation_invariance_check(s: SteinbergMap,
                                 g: Sequence[Sequence[Fraction]]) -> bool:
    """Components are unchanged by X -> g X g^{-1} for invertible rational g."""
    n = s.rank + 1
    gm = [[Fraction(x) for x in row] for row in g]
    if len(gm) != n or any(len(r) != n for r in gm):
        raise PolyError(f"conjugating matrix must be {n} x {n}")
    gi = rational_inverse(gm)
    conj = []
    for i in range(n):
        row = []
        for j in range(n):
            e = Polynomial.zero(s.ambient)
            for a in range(n):
                for b in range(n):
                    c = gm[i][a] * gi[b][j]
                    if c:
                        e = e + s.generic_matrix.entry(a, b).scale(c)
            row.append(e)
        conj.append(row)
    images = {f"x{i + 1}{j + 1}": conj[i][j] for (i, j) in _entry_positions(n)}
    return all(c.substitute(images) == c for c in s.components)


# ---------------------------------------------------------------------------
# Subregular slice for sl_3
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubregularSliceReport:
    """Exact checks along X(t, Y) = diag(t, t, -2t) + (Y in the upper sl_2 block)."""

    slice_ambient: tuple[str, ...]
    c2: Polynomial
    c3: Polynomial
    block_hessian_rank: int        # of c2 in the sl_2-block entries; want 3
    differential_rank: int         # of (c2, c3) at t=1, Y=0; want 1
    t_column_only: bool            # the rank comes from the t direction alone
    a1_at_origin: bool             # t=0 fibre has a Morse (A_1) point at Y=0
    c3_vanishes_at_t0: bool

    @property
    def passed(self) -> bool:
        return (self.block_hessian_rank == 3 and self.differential_rank == 1
                and self.t_column_only and self.a1_at_origin)


def subregular_slice_check() -> SubregularSliceReport:
    """Exhibit the A_1 (Morse) block transverse to the subregular locus of sl_3."""
    ambient = ("t", "y11", "y12", "y21")
    t, y11, y12, y21 = variables(ambient)
    zero = Polynomial.zero(ambient)
    x = PolyMatrix.from_rows([
        [t + y11, y12, zero],
        [y21, t - y11, zero],
        [zero, zero, (-2) * t],
    ])
    lam_ambient = ambient + ("lam",)
    lam = Polynomial.variable(lam_ambient, "lam")
    rows = []
    for i in range(3):
        rows.append([
            (lam if i == j else Polynomial.zero(lam_ambient))
            - x.entry(i, j).extend(lam_ambient)
            for j in range(3)])
    char = determinant_fraction_free(PolyMatrix.from_rows(rows))
    c2 = char.coefficient_in("lam", 1)
    c3 = char.coefficient_in("lam", 0)
    block = ("y11", "y12", "y21")
    origin = {v: 0 for v in ambient}
    hess = [[c2.partial_derivative(a).partial_derivative(b).evaluate(origin)
             for b in block] for a in block]
    block_rank = rational_rank(hess)
    subregular_point = {"t": Fraction(1), "y11": 0, "y12": 0, "y21": 0}
    diff = [[c.partial_derivative(v).evaluate(subregular_point) for v in ambient]
            for c in (c2, c3)]
    diff_rank = rational_rank(diff)
    t_only = all(diff[row][col] == 0
                 for row in range(2) for col in range(1, 4))
    t_zero = {"t": Polynomial.zero(ambient)}
    c2_fibre = c2.substitute(t_zero)
    grad_zero = all(c2_fibre.partial_derivative(v).evaluate(origin) == 0
                    for v in block)
    a1 = (c2_fibre.constant_term() == 0) and grad_zero and (block_rank == 3)
    c3_t0 = c3.substitute(t_zero).is_zero()
    return SubregularSliceReport(ambient, c2, c3, block_rank, diff_rank,
                                 t_only, a1, c3_t0)
