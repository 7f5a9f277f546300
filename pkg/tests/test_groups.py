import pytest
from hypothesis import given, strategies as st

from gradedgrowth.errors import ContractError, OutOfRangeError, ResourceBudgetError
from gradedgrowth.groups import (FreeAbelian, FreeGroup, Heisenberg, Lamplighter,
                                 ball, find_dead_ends, is_dead_end,
                                 triangle_dead_end_family, word_length)
from gradedgrowth.registry import BUILTIN_SPECS, get_group, make_group


def l1_ball_size(d, r):
    # closed-form oracle: lattice points of L1 norm <= r, by direct count
    from itertools import product
    return sum(1 for p in product(range(-r, r + 1), repeat=d)
               if sum(abs(x) for x in p) <= r)


class TestBall:
    def test_z_sphere_sizes(self, z1):
        b = ball(z1, 3)
        assert b.sphere_sizes() == [1, 2, 2, 2]

    def test_free2_sphere_sizes(self):
        b = ball(FreeGroup(2), 3)
        assert b.sphere_sizes() == [1, 4, 12, 36]

    def test_z2_ball_13(self, z2):
        b = ball(z2, 2)
        assert len(b) == 13 == l1_ball_size(2, 2)

    def test_z3_ball_matches_lattice_count(self):
        b = ball(FreeAbelian(3), 4)
        assert len(b) == l1_ball_size(3, 4)

    def test_monotone_restriction(self, z2):
        b3, b4 = ball(z2, 3), ball(z2, 4)
        for g, n in b3.lengths.items():
            assert b4.lengths[g] == n

    def test_memory_cap(self, z2):
        with pytest.raises(ResourceBudgetError):
            ball(z2, 10, max_elements=50)

    def test_radius_zero(self, z1):
        b = ball(z1, 0)
        assert b.elements == [(0,)]

    def test_negative_radius(self, z1):
        with pytest.raises(ContractError):
            ball(z1, -1)


class TestWordLength:
    def test_z2_manhattan(self, z2):
        b = ball(z2, 6)
        assert word_length(b, (2, 3)) == 5

    def test_identity(self, z2):
        assert word_length(ball(z2, 0), (0, 0)) == 0

    def test_free_reduced_length(self):
        f = FreeGroup(2)
        b = ball(f, 4)
        assert word_length(b, f.normalize("abA")) == 3

    def test_outside_ball_raises(self, z1):
        b = ball(z1, 2)
        with pytest.raises(OutOfRangeError):
            word_length(b, (5,))

    def test_length_symmetric_under_inversion(self, lamplighter, lamplighter_ball8):
        b = lamplighter_ball8
        for g, n in b.lengths.items():
            assert b.lengths[lamplighter.inv(g)] == n

    def test_neighbor_lengths_differ_by_at_most_one(self, z2):
        b = ball(z2, 4)
        for g, n in b.lengths.items():
            for s in z2.generator_symbols:
                h = z2.multiply(g, s)
                if h in b:
                    assert abs(b.lengths[h] - n) <= 1


class TestOracleAxioms:
    oracles = [FreeAbelian(2), FreeGroup(2), Heisenberg(), Lamplighter()]

    @pytest.mark.parametrize("oracle", oracles, ids=lambda o: o.name)
    def test_generator_inverse_cancels(self, oracle):
        b = ball(oracle, 3)
        for g in b.elements:
            for s in oracle.generator_symbols:
                t = oracle.inverse_symbol(s)
                assert oracle.multiply(oracle.multiply(g, s), t) == g

    @pytest.mark.parametrize("oracle", oracles, ids=lambda o: o.name)
    def test_identity_is_empty_word(self, oracle):
        assert oracle.normalize("") == oracle.identity

    @given(st.data())
    def test_normalize_respects_concatenation(self, data):
        oracle = data.draw(st.sampled_from(self.oracles))
        syms = st.sampled_from(oracle.generator_symbols)
        u = data.draw(st.lists(syms, max_size=6))
        v = data.draw(st.lists(syms, max_size=6))
        assert oracle.mul(oracle.normalize(u), oracle.normalize(v)) == \
            oracle.normalize(list(u) + list(v))

    @given(st.data())
    def test_inverse_word(self, data):
        oracle = data.draw(st.sampled_from(self.oracles))
        syms = st.sampled_from(oracle.generator_symbols)
        w = data.draw(st.lists(syms, max_size=8))
        g = oracle.normalize(w)
        assert oracle.mul(g, oracle.inv(g)) == oracle.identity
        assert oracle.mul(oracle.inv(g), g) == oracle.identity

    def test_heisenberg_relation(self):
        h = Heisenberg()
        x = h.normalize("x")
        y = h.normalize("y")
        comm = h.mul(h.mul(h.inv(x), h.inv(y)), h.mul(x, y))
        assert comm == (0, 0, 1)


class TestFiniteOracles:
    @pytest.mark.parametrize("name", ["c2", "c3", "c4", "c8", "c9", "c2xc2",
                                      "c3xc3", "d4", "q8", "heisenberg_mod_3"])
    def test_group_axioms_exhaustive(self, name):
        g = get_group(name)
        elems = list(g.elements())
        assert len(elems) == g.order
        e = g.identity
        for a in elems:
            assert g.mul(a, g.inv(a)) == e
            assert g.mul(a, e) == a == g.mul(e, a)
        # associativity on a deterministic sample
        sample = elems[: min(len(elems), 6)]
        for a in sample:
            for b in sample:
                for c in sample:
                    assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))

    def test_q8_structure(self):
        q = get_group("q8")
        i = q.normalize("i")
        j = q.normalize("j")
        assert q.mul(i, i) == q.mul(j, j)  # i^2 = j^2 = -1
        assert q.mul(q.mul(i, i), q.mul(i, i)) == q.identity

    def test_generators_closed_under_inversion(self):
        for name in BUILTIN_SPECS:
            g = get_group(name)
            for s in g.generator_symbols:
                assert g.inverse_symbol(s) in g.generator_symbols


class TestDeadEnds:
    def test_z_no_dead_end_at_5(self, z1):
        b = ball(z1, 7)
        assert not is_dead_end(z1, b, (5,))

    def test_z2_empty_radius_6(self, z2):
        assert find_dead_ends(z2, 6) == []

    def test_z_empty(self, z1):
        assert find_dead_ends(z1, 6) == []

    def test_free2_empty(self):
        assert find_dead_ends(FreeGroup(2), 6) == []

    def test_lamplighter_nonempty_radius_8(self, lamplighter, lamplighter_ball8):
        found = find_dead_ends(lamplighter, 8)
        assert found
        for g in found:
            assert is_dead_end(lamplighter, lamplighter_ball8, g)

    def test_lamplighter_known_dead_end(self, lamplighter, lamplighter_ball8):
        # lamps on the full visited interval, cursor back home
        g = ((-1, 0, 1), 0)
        assert lamplighter_ball8.word_length(g) == 7
        assert is_dead_end(lamplighter, lamplighter_ball8, g)

    def test_ball_too_small_raises(self, z1):
        b = ball(z1, 3)
        with pytest.raises(OutOfRangeError):
            is_dead_end(z1, b, (3,))

    def test_sorted_by_length_then_enumeration(self, lamplighter):
        found = find_dead_ends(lamplighter, 9)
        b = ball(lamplighter, 9)
        lengths = [b.word_length(g) for g in found]
        assert lengths == sorted(lengths)


class TestTriangleFamily:
    def test_even_k_first_members(self):
        assert triangle_dead_end_family(4, 1) == "xyxy"
        assert triangle_dead_end_family(4, 2) == "xyxyyxyx"

    def test_odd_k(self):
        assert triangle_dead_end_family(5, 1) == "xyxyx"
        assert triangle_dead_end_family(5, 2) == "xyxyxxyxyx"

    def test_negative_index_inverts(self):
        assert triangle_dead_end_family(5, -1) == "XYXYX"
        assert triangle_dead_end_family(4, -2) == "XYXYYXYX"

    def test_invalid_arguments(self):
        with pytest.raises(ContractError):
            triangle_dead_end_family(2, 1)
        with pytest.raises(ContractError):
            triangle_dead_end_family(4, 0)

    @pytest.mark.parametrize("k,n", [(4, 1), (4, 2), (4, -1), (4, -2),
                                     (5, 1), (5, 2), (5, -1), (5, -2)])
    def test_family_members_are_dead_ends(self, k, n, t334, t335):
        oracle = t334 if k == 4 else t335
        g = oracle.normalize(triangle_dead_end_family(k, n))
        b = ball(oracle, 11)
        assert is_dead_end(oracle, b, g)


class TestRegistry:
    def test_unknown_group(self):
        with pytest.raises(ContractError):
            get_group("nope")

    def test_unknown_kind(self):
        with pytest.raises(ContractError):
            make_group({"kind": "mystery"})

    def test_registry_file(self, tmp_path):
        path = tmp_path / "reg.json"
        path.write_text('{"myz": {"kind": "free_abelian", "params": {"d": 1}}}')
        g = get_group("myz", str(path))
        assert g.kind == "free_abelian"

    def test_cayley_table_kind(self):
        # C2 as an explicit table
        g = make_group({"kind": "finite_cayley_table",
                        "params": {"table": [[0, 1], [1, 0]],
                                   "generators": {"s": 1}}})
        assert g.mul(1, 1) == 0
        assert g.inv(1) == 1
