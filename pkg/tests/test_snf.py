import random

from trisect.snf import cokernel_invariants, smith_normal_form


def test_identity():
    diag, U, V, D = smith_normal_form([[1, 0], [0, 1]])
    assert diag == [1, 1]


def test_divisibility_example():
    diag, *_ = smith_normal_form([[2, 0], [0, 3]])
    assert diag == [1, 6]


def test_zero_matrix():
    diag, *_ = smith_normal_form([[0, 0], [0, 0]])
    assert diag == [0, 0]


def test_random_verified(seed=4):
    rng = random.Random(seed)
    for _ in range(50):
        r = rng.randrange(1, 5)
        c = rng.randrange(1, 5)
        M = [[rng.randrange(-4, 5) for _ in range(c)] for _ in range(r)]
        diag, U, V, D = smith_normal_form(M)  # internal assertions verify
        for k in range(len(diag) - 1):
            if diag[k]:
                assert diag[k + 1] % diag[k] == 0


def test_cokernel():
    torsion, free = cokernel_invariants([[2, 0], [0, 3]])
    assert torsion == [6] and free == 0
    torsion, free = cokernel_invariants([[0]])
    assert torsion == [] and free == 1
    torsion, free = cokernel_invariants([[1, 0]])
    assert torsion == [] and free == 1
