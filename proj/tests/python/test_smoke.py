import math

import pytest

import dfl


@pytest.fixture(scope="module")
def table():
    return dfl.sieve_primes(10_000)


def test_factorization_and_radicals(table):
    assert dfl.factorize(90, table) == {2: 1, 3: 2, 5: 1}
    assert dfl.factorize(1, table) == {}
    assert dfl.largest_prime_factor(4375, table) == 7
    assert dfl.radical(4374, table) == 6
    with pytest.raises(dfl.OutOfRange):
        dfl.factorize(10_001, table)
    with pytest.raises(dfl.InvalidArgument):
        dfl.factorize(0, table)


def test_double_factorial_is_exact():
    expected = 1
    for m in range(2, 121, 2):
        expected *= m
    assert dfl.double_factorial(120) == expected
    assert dfl.double_factorial(9) == 945


def test_identity_and_classification(table):
    sol = dfl.classify(dfl.EquationInstance(120, [118, 5, 4]), table)
    assert sol.classification == dfl.Classification.trivial_odd
    assert not dfl.check_identity(dfl.EquationInstance(10, [6, 4]), table)
    with pytest.raises(dfl.NotASolution):
        dfl.classify(dfl.EquationInstance(10, [6, 4]), table)


def test_generators(table):
    inst = dfl.generate_trivial_even([6, 4])
    assert (inst.n, inst.a) == (384, [382, 6, 4])
    assert dfl.check_identity(inst, table)
    assert dfl.generate_trivial_odd(5, [4]).a == [958, 5, 4, 4]


def test_search_small(table):
    found = dfl.search(60, 3, dfl.ParityMode.r0, table)
    assert [(s.instance.n, s.instance.a) for s in found] == [(8, [6, 4]), (48, [46, 6])]
    odd = dfl.search(60, 3, dfl.ParityMode.r1, table, threads=2)
    assert [s.instance.n for s in odd] == [12, 20, 24, 30]


def test_abc(table):
    t = dfl.make_triple(1, 4374, table)
    assert (t.c, t.rad) == (4375, 210)
    assert t.quality == pytest.approx(math.log(4375) / math.log(210))
    triple, rhs, holds = dfl.proof_triple(9, 1, 0, table)
    assert (triple.a, triple.b, triple.c) == (1, 9, 10)
    assert holds and rhs == pytest.approx(30**1.75)


def test_bounds(table):
    r = dfl.verify_theta_bound(10_000, table)
    assert r.passed and r.margin > 0
    exceptions, result = dfl.theorem24_scan(2, 2, 300, table)
    assert (9, 2) in exceptions and (224, 2) in exceptions
    assert dfl.analyze_block(9, 2, table).term_radicals == [3, 10]
