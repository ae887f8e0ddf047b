"""Shared builders and independent oracles for the test suite."""

from fractions import Fraction

from multinorm.groups import group_from_permutations


def d4():
    return group_from_permutations(4, [[[0, 1, 2, 3]], [[0, 2]]])


def a4():
    return group_from_permutations(4, [[[0, 1, 2]], [[0, 1], [2, 3]]])


def klein4():
    return group_from_permutations(4, [[[0, 1]], [[2, 3]]])


def c2():
    return group_from_permutations(2, [[[0, 1]]])


def c4():
    return group_from_permutations(4, [[[0, 1, 2, 3]]])


def c2xc2xc2():
    return group_from_permutations(6, [[[0, 1]], [[2, 3]], [[4, 5]]])


def s3():
    return group_from_permutations(3, [[[0, 1]], [[0, 1, 2]]])


def c6():
    return group_from_permutations(6, [[[0, 1, 2, 3, 4, 5]]])


def q8():
    # quaternion group acting on itself: i and j by left translation
    i = [[0, 2, 1, 3], [4, 6, 5, 7]]
    j = [[0, 4, 1, 5], [2, 7, 3, 6]]
    return group_from_permutations(8, [i, j])


def rational_rank(rows):
    """Gaussian elimination over Q, independent of the integer engine."""
    m = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        m[rank] = [v / pv for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank
