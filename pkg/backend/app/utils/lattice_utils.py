"""Exact integer / rational linear algebra used by the cone and volume code.

Everything here works on plain Python ints and ``Fraction`` values; sympy
supplies rank, determinants, inverses and invariant factors.
"""
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix, Rational, ZZ
from sympy.matrices.normalforms import invariant_factors

IntVector = Tuple[int, ...]


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def vector_gcd(vec: Sequence[int]) -> int:
    return reduce(gcd, (abs(int(x)) for x in vec), 0)


def primitive(vec: Sequence[int]) -> IntVector:
    """성분 gcd로 나눈 원시 정수 벡터"""
    g = vector_gcd(vec)
    if g == 0:
        raise ValueError("영벡터는 원시 벡터로 만들 수 없습니다")
    return tuple(int(x) // g for x in vec)


def primitive_rational(vec: Sequence[Fraction]) -> IntVector:
    """유리수 벡터와 같은 방향의 원시 정수 벡터"""
    fracs = [Fraction(x) for x in vec]
    denom = reduce(lambda a, b: a * b // gcd(a, b), (f.denominator for f in fracs), 1)
    return primitive([int(f * denom) for f in fracs])


def _to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return Matrix([[x for x in row] for row in rows])


def matrix_rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return int(_to_matrix(rows).rank())


def integer_det(rows: Sequence[Sequence[int]]) -> int:
    return int(_to_matrix(rows).det())


def rational_det(rows: Sequence[Sequence]) -> Fraction:
    value = _to_matrix([[_sympy_rational(x) for x in row] for row in rows]).det()
    return Fraction(int(value.p), int(value.q))


def _sympy_rational(x):
    f = Fraction(x)
    return Rational(f.numerator, f.denominator)


def is_saturated(rows: Sequence[Sequence[int]]) -> bool:
    """행들이 생성하는 부분격자가 (span ∩ Z^n)과 같은지: 0이 아닌 불변인자가 모두 1"""
    if not rows:
        return True
    factors = invariant_factors(_to_matrix(rows), domain=ZZ)
    return all(abs(int(f)) == 1 for f in factors if int(f) != 0)


def elementary_divisors(rows: Sequence[Sequence[int]]) -> List[int]:
    if not rows:
        return []
    return [abs(int(f)) for f in invariant_factors(_to_matrix(rows), domain=ZZ) if int(f) != 0]


def solve_rational(rows: Sequence[Sequence[int]], rhs: Sequence) -> Optional[List[Fraction]]:
    """rows · x = rhs 의 유일한 유리수 해 (열 rank가 가득 찬 경우). 해가 없으면 None"""
    A = _to_matrix(rows)
    b = Matrix([_sympy_rational(x) for x in rhs])
    try:
        sol, params = A.gauss_jordan_solve(b)
    except ValueError:
        return None
    if params.shape[0] != 0:
        return None
    return [Fraction(int(s.p), int(s.q)) for s in sol]


def rational_inverse(rows: Sequence[Sequence]) -> List[List[Fraction]]:
    inv = _to_matrix([[_sympy_rational(x) for x in row] for row in rows]).inv()
    return [[Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(inv.cols)]
            for i in range(inv.rows)]


def integer_inverse(rows: Sequence[Sequence[int]]) -> List[List[int]]:
    """유니모듈러 행렬의 정수 역행렬"""
    inv = rational_inverse(rows)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("행렬이 유니모듈러가 아닙니다")
    return [[int(x) for x in row] for row in inv]


def identity(n: int) -> List[List[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_vec(M: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in M)


def transpose(M: Sequence[Sequence]) -> List[list]:
    return [list(col) for col in zip(*M)]


def unimodular_completion(row: Sequence[int]) -> List[List[int]]:
    """원시 정수 행벡터 r 에 대해 r·U = e_1 인 유니모듈러 U (열 연산의 누적)"""
    r = [int(x) for x in row]
    n = len(r)
    if vector_gcd(r) != 1:
        raise ValueError("원시 벡터가 아닙니다")
    U = identity(n)

    def col_axpy(dst: int, src: int, q: int):
        # col_dst -= q * col_src
        for k in range(n):
            U[k][dst] -= q * U[k][src]

    while sum(1 for x in r if x != 0) > 1:
        pivot = min((i for i in range(n) if r[i] != 0), key=lambda i: (abs(r[i]), i))
        for j in range(n):
            if j != pivot and r[j] != 0:
                q = r[j] // r[pivot]
                r[j] -= q * r[pivot]
                col_axpy(j, pivot, q)

    pivot = next(i for i in range(n) if r[i] != 0)
    if r[pivot] < 0:
        for k in range(n):
            U[k][pivot] = -U[k][pivot]
        r[pivot] = -r[pivot]
    if pivot != 0:
        for k in range(n):
            U[k][0], U[k][pivot] = U[k][pivot], U[k][0]
    return U


def integer_kernel(columns: Sequence[Sequence[int]]) -> List[IntVector]:
    """e_a -> columns[a] 사상의 정수 핵(포화된 기저). 유니모듈러 열 소거로 계산"""
    d = len(columns)
    if d == 0:
        return []
    n = len(columns[0])
    A = [[int(columns[j][i]) for j in range(d)] for i in range(n)]
    U = identity(d)

    def col_axpy(dst: int, src: int, q: int):
        for k in range(n):
            A[k][dst] -= q * A[k][src]
        for k in range(d):
            U[k][dst] -= q * U[k][src]

    def col_swap(a: int, b: int):
        for k in range(n):
            A[k][a], A[k][b] = A[k][b], A[k][a]
        for k in range(d):
            U[k][a], U[k][b] = U[k][b], U[k][a]

    pivot_col = 0
    for i in range(n):
        if pivot_col >= d:
            break
        while True:
            nonzero = [j for j in range(pivot_col, d) if A[i][j] != 0]
            if len(nonzero) <= 1:
                break
            p = min(nonzero, key=lambda j: (abs(A[i][j]), j))
            for j in nonzero:
                if j != p:
                    col_axpy(j, p, A[i][j] // A[i][p])
        nonzero = [j for j in range(pivot_col, d) if A[i][j] != 0]
        if nonzero:
            col_swap(pivot_col, nonzero[0])
            pivot_col += 1

    basis = []
    for j in range(pivot_col, d):
        vec = primitive([U[k][j] for k in range(d)])
        lead = next(x for x in vec if x != 0)
        if lead < 0:
            vec = tuple(-x for x in vec)
        basis.append(vec)
    return basis


def is_unimodular(M: Sequence[Sequence[int]]) -> bool:
    return abs(integer_det(M)) == 1


def to_fraction_vector(values: Sequence) -> Tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)
