"""Matrix permanents: definitional and Ryser evaluation, classical bounds.

Integer and ``Fraction`` inputs are evaluated exactly.  Float inputs go through
Ryser with compensated summation and agree with the exact value to about
1e-9 relative.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations
from numbers import Number
from typing import Sequence

from .alldiff import InstanceLike, _domains

Matrix = Sequence[Sequence[Number]]

BRUTE_LIMIT = 8
RYSER_LIMIT = 30
SHIFTED_LIMIT = 12
STOCHASTIC_TOL = 1e-9


class ScaleExceeded(ValueError):
    pass


class NotDoublyStochastic(ValueError):
    pass


class ZeroRowSum(ValueError):
    pass


class NotPermutationInstance(ValueError):
    pass


def _order(a: Matrix) -> int:
    k = len(a)
    if any(len(row) != k for row in a):
        raise ValueError("matrix must be square")
    return k


def permanent_brute(a: Matrix):
    """Sum over all permutations of the products a[i][sigma(i)]."""
    k = _order(a)
    if k > BRUTE_LIMIT:
        raise ScaleExceeded(f"brute force limited to order {BRUTE_LIMIT}")
    total = 0
    for sigma in permutations(range(k)):
        p = 1
        for i, j in enumerate(sigma):
            p *= a[i][j]
            if not p:
                break
        total += p
    return total


def permanent_ryser(a: Matrix):
    """Ryser's inclusion-exclusion, subsets visited in Gray-code order."""
    k = _order(a)
    if k > RYSER_LIMIT:
        raise ScaleExceeded(f"Ryser limited to order {RYSER_LIMIT}")
    if k == 0:
        return 1
    exact = all(isinstance(x, (int, Fraction)) for row in a for x in row)
    sums = [0] * k
    total = 0
    comp = 0.0
    gray = 0
    for step in range(1, 1 << k):
        j = (step & -step).bit_length() - 1  # column flipped at this step
        gray ^= 1 << j
        sign = 1 if gray >> j & 1 else -1
        for i in range(k):
            sums[i] += sign * a[i][j]
        prod = 1
        for s in sums:
            prod *= s
            if not prod:
                break
        term = -prod if bin(gray).count("1") & 1 else prod
        if exact:
            total += term
        else:
            # Neumaier summation
            t = total + term
            if abs(total) >= abs(term):
                comp += (total - t) + term
            else:
                comp += (term - t) + total
            total = t
    result = total if exact else total + comp
    return result if k % 2 == 0 else -result


def row_sums(a: Matrix) -> list:
    return [sum(row) for row in a]


def column_sums(a: Matrix) -> list:
    return [sum(col) for col in zip(*a)]


def is_doubly_stochastic(a: Matrix, tol: float = STOCHASTIC_TOL) -> bool:
    _order(a)
    if any(x < 0 or x > 1 for row in a for x in row):
        return False
    return all(abs(s - 1) <= tol for s in row_sums(a) + column_sums(a))


def vdw_lower_bound(a: Matrix) -> Fraction:
    """k!/k^k, a lower bound on the permanent of any doubly stochastic matrix."""
    if not is_doubly_stochastic(a):
        raise NotDoublyStochastic("rows and columns must each sum to 1 with entries in [0, 1]")
    k = len(a)
    return Fraction(math.factorial(k), k ** k)


def _zero_one_rows(a: Matrix) -> list[int]:
    _order(a)
    if any(x not in (0, 1) for row in a for x in row):
        raise ValueError("matrix entries must be 0 or 1")
    sums = [int(s) for s in row_sums(a)]
    if any(s == 0 for s in sums):
        raise ZeroRowSum("every row needs at least one 1")
    return sums


def minc_upper_bound(a: Matrix) -> float:
    """prod (r_i!)^(1/r_i) over the row sums of a 0-1 matrix."""
    sums = _zero_one_rows(a)
    return math.exp(sum(math.lgamma(r + 1) / r for r in sums))


def minc_bound_holds(a: Matrix, per: int) -> bool:
    """Exact check of per <= prod (r_i!)^(1/r_i), raising both sides to lcm(r_i)."""
    sums = _zero_one_rows(a)
    L = math.lcm(*sums)
    rhs = 1
    for r in sums:
        rhs *= math.factorial(r) ** (L // r)
    return per ** L <= rhs


def shifted_permanent(z, k: int):
    """per(zI + J) = k! * sum_{r=0..k} z^r / r!; z = -1 counts derangements."""
    if k > SHIFTED_LIMIT:
        raise ScaleExceeded(f"closed form evaluated up to order {SHIFTED_LIMIT}")
    if k < 0:
        raise ValueError("order must be non-negative")
    exact = isinstance(z, (int, Fraction))
    total = sum((math.factorial(k) // math.factorial(r)) * z ** r for r in range(k + 1))
    return total if exact else float(total)


def representation_matrix(inst: InstanceLike) -> tuple[list[list[int]], list[int]]:
    """0-1 matrix with a row per value and a column per variable; also the value order."""
    domains = _domains(inst)
    values = sorted(set().union(*domains))
    return [[1 if v in d else 0 for d in domains] for v in values], values


def alldiff_solution_count(inst: InstanceLike) -> int:
    domains = _domains(inst)
    mat, values = representation_matrix(domains)
    if len(values) != len(domains):
        raise NotPermutationInstance(
            f"{len(domains)} variables over {len(values)} values is not a permutation instance")
    return permanent_ryser(mat)


# -- dense text format -----------------------------------------------------------

def read_dense(text: str) -> list[list]:
    """``order k`` followed by k rows of k numbers (ints or fractions like 1/3)."""
    toks = [t for ln in text.splitlines() for t in ln.split("#", 1)[0].split()]
    if len(toks) < 2 or toks[0] != "order":
        raise ValueError("dense matrix must start with 'order <k>'")
    k = int(toks[1])
    nums = toks[2:]
    if len(nums) != k * k:
        raise ValueError(f"expected {k * k} entries, got {len(nums)}")

    def num(t: str):
        if "." in t or "e" in t.lower():
            return float(t)
        f = Fraction(t)
        return f.numerator if f.denominator == 1 else f

    vals = [num(t) for t in nums]
    return [vals[i * k:(i + 1) * k] for i in range(k)]


def write_dense(a: Matrix) -> str:
    lines = [f"order {len(a)}"]
    lines += [" ".join(str(x) for x in row) for row in a]
    return "\n".join(lines) + "\n"
