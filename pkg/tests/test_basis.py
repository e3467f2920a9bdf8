import pytest

from dluroth.basis import Basis, GradientEvaluator, candidate_order, greedy_basis, select_basis
from dluroth.diffring import U, uvar, xvar
from dluroth.errors import RetryExhaustedError
from dluroth.instances import random_instance
from dluroth.linalg import ExactMatrix, rank_exact
from dluroth.parser import parse_input
from dluroth.prolongation import draw_point, prolonged_system, u_assignment
from dluroth.rng import CounterRNG


def test_example1_basis(ex1):
    b = select_basis(prolonged_system(ex1), CounterRNG(0))
    assert b.Z == (xvar(1), xvar(2), xvar(1, 1))
    assert b.U == () and b.k0 == 0


def test_example2_basis(ex2):
    b = select_basis(prolonged_system(ex2), CounterRNG(0))
    assert b.Z == (xvar(1), xvar(2), xvar(1, 1), xvar(2, 1), xvar(2, 2))
    assert b.U == () and b.k0 == 0


def test_single_generator_basis(single):
    b = select_basis(prolonged_system(single), CounterRNG(0))
    assert b.Z == (xvar(1), xvar(1, 1))
    assert b.U == (uvar(0),) and b.k0 == 1
    assert b.eliminated == uvar(1)
    assert b.variables == (xvar(1), xvar(1, 1), uvar(0))


def test_candidate_order(ex1):
    assert candidate_order(ex1) == [xvar(1), xvar(2), xvar(1, 1), xvar(2, 1), uvar(0), uvar(1)]


def test_unlucky_points():
    # x1 = u'^2 has zero gradient where u' = 0, so rank is lost
    g = parse_input("(u'^2)")
    assert len(greedy_basis(g, (1, 0, 0))) == 2
    assert len(greedy_basis(g, (1, 1, 0))) == 3


def test_special_point_changes_z(ex1):
    # at u = 0 the gradient of x1' lies in the span of x1 and x2
    assert greedy_basis(ex1, (0, 1, 0)).Z == (xvar(1), xvar(2), xvar(2, 1))


def test_selection_failure_is_reported(monkeypatch, ex1):
    import dluroth.basis as mod

    monkeypatch.setattr(mod, "greedy_basis", lambda gens, pt, grads=None: Basis((xvar(1),), (), 0))
    with pytest.raises(RetryExhaustedError, match="basis selection failed"):
        select_basis(prolonged_system(ex1), CounterRNG(0))


def _random_systems(seed, count):
    rng = CounterRNG(seed, "basis")
    for i in range(count):
        r = rng.child(str(i))
        gens = random_instance(r.randint(1, 3), r.randint(1, 2), r.randint(1, 2), r).gens
        yield gens, prolonged_system(gens)


def test_size_and_k0_on_random_instances():
    for gens, sys in _random_systems(1, 30):
        b = select_basis(sys, CounterRNG(3))
        assert len(b) == 2 * gens.e + 1
        assert b.k0 <= gens.e
        assert uvar(b.k0) not in b.U
        assert all(uvar(k) in b.U for k in range(b.k0))
        assert all(v.kind == U and v.order <= gens.e for v in b.U)
        assert all(v.kind >= 1 and v.order <= gens.e for v in b.Z)


def test_z_is_maximal():
    for gens, sys in _random_systems(2, 20):
        pt = draw_point(gens, CounterRNG(5))
        grads = GradientEvaluator(gens)
        b = greedy_basis(gens, pt, grads)
        values = u_assignment(pt)
        zrows = [grads.gradient(v, values) for v in b.Z]
        r = rank_exact(ExactMatrix.from_rows(zrows)) if zrows else 0
        for v in candidate_order(gens):
            if v.kind >= 1 and v not in b.Z:
                assert rank_exact(ExactMatrix.from_rows(zrows + [grads.gradient(v, values)])) == r


def test_selection_is_deterministic():
    for gens, sys in _random_systems(3, 10):
        assert select_basis(sys, CounterRNG(42)) == select_basis(sys, CounterRNG(42))
