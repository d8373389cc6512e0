"""Acceptance suite: one test per criterion, bit-exact expectations.

Each test prints a PASS line on success (run with ``pytest -s`` to see
them); any assertion failure is the corresponding FAIL.
"""

import random
import time

import pytest

from oracles import interval_hom_dim, maximal_terminal

from clusterknit import euler, minors
from clusterknit.cluster import (
    initial_seed,
    mutate_delta_dimvec,
    mutate_dimvec,
    mutate_seed,
)
from clusterknit.exchange import make_matrix, mutate_matrix
from clusterknit.laurent import LaurentPoly, substitute
from clusterknit.mesh import (
    IntervalLabel,
    MeshVertex,
    adapted_orderings,
    build_category,
    delta_dims,
    hom_dim,
    projected_dimvec,
    triangle_display,
    validate_terminal,
)
from clusterknit.quiver import adapted_word, cartan, inversion_roots, validate_quiver
from clusterknit.rigidpath import make_schedule, pbw_expand, run_path, schedule_length

V = MeshVertex
L = IntervalLabel


def report(n, text):
    print(f"ACCEPTANCE {n}: PASS - {text}")


def timed(budget):
    start = time.time()

    def check():
        elapsed = time.time() - start
        assert elapsed < budget, f"over time budget: {elapsed:.1f}s >= {budget}s"
        return elapsed

    return check


def test_criterion_01_mutation_involution(kronecker3, fan_a3):
    done = timed(5)
    rng = random.Random(101)
    for _ in range(1000):
        r = rng.randint(2, 8)
        rows = [[0] * r for _ in range(r)]
        for i in range(r):
            for j in range(i + 1, r):
                v = rng.randint(-3, 3)
                rows[i][j], rows[j][i] = v, -v
        m = make_matrix(rows)
        k = rng.randint(1, r)
        assert mutate_matrix(mutate_matrix(m, k), k).strictly_equal(m)
    for cat in (kronecker3, fan_a3):
        base = initial_seed(cat)
        for _ in range(100):
            s = base
            for _ in range(rng.randint(0, 3)):
                s = mutate_seed(s, rng.choice(base.matrix.mutable()))
            k = rng.choice(base.matrix.mutable())
            assert mutate_seed(mutate_seed(s, k), k).core_equal(s)
    report(1, f"matrix and seed mutation involutions ({done():.1f}s)")


def test_criterion_02_dimension_vectors(kronecker3):
    done = timed(1)
    cat = kronecker3
    want = {
        (1, 2): ((1, 3, 9), (2, 6), (0, 2)),
        (1, 1): ((1, 4, 12), (2, 8), (0, 2)),
        (1, 0): ((1, 4, 13), (2, 8), (0, 2)),
        (2, 1): ((0, 2, 6), (1, 4), (0, 1)),
        (2, 0): ((0, 2, 8), (1, 5), (0, 1)),
        (3, 1): ((0, 2, 4), (1, 3), (1, 0)),
        (3, 0): ((0, 2, 6), (1, 4), (1, 1)),
    }
    for (i, a), tri in want.items():
        lbl = L(i, a, cat.terminal.level(i))
        assert triangle_display(cat, projected_dimvec(cat, lbl)) == tri
    s = initial_seed(cat)
    k = cat.pos(V(1, 1)) + 1
    vec, dominated = mutate_dimvec(s, k)
    assert dominated
    assert triangle_display(cat, vec) == ((0, 4, 13), (2, 8), (0, 2))
    report(2, f"all seven hom triangles and the mutated vector ({done():.2f}s)")


def test_criterion_03_delta_vectors(kronecker3):
    done = timed(1)
    assert triangle_display(kronecker3, delta_dims(kronecker3)) == (
        (23, 6, 1),
        (14, 3),
        (11, 4),
    )
    s = initial_seed(kronecker3)
    k = kronecker3.pos(V(1, 1)) + 1
    vec = mutate_delta_dimvec(s, k)
    assert triangle_display(kronecker3, vec) == ((0, 0, 1), (2, 0), (0, 0))
    report(3, f"d_Delta and the mutated Delta-vector ({done():.2f}s)")


def test_criterion_04_schedule(five_vertex):
    done = timed(10)
    rng = random.Random(104)
    from test_mesh import random_terminal

    for _ in range(50):
        td = random_terminal(rng)
        assert len(make_schedule(td)) == schedule_length(td)
    e8 = validate_quiver(
        8, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (3, 8)]
    )
    td8 = validate_terminal(e8, (14,) * 8)
    assert len(make_schedule(td8)) == 840
    assert build_category(td8).r == 120  # every indecomposable exists
    res = run_path(
        initial_seed(five_vertex, with_vars=False),
        make_schedule(five_vertex.terminal),
    )
    assert len(res.steps) == 19
    final = sorted((l.i, l.a, l.b) for l in res.seed.labels)
    assert final == sorted(
        (i, 0, b)
        for i in range(1, 6)
        for b in range(five_vertex.terminal.level(i) + 1)
    )
    report(4, f"r(M) formula, 840 steps on E8, 19-step run ({done():.1f}s)")


def test_criterion_05_exchange_pbw(kronecker3):
    done = timed(1)
    cat = kronecker3
    res = run_path(initial_seed(cat), make_schedule(cat.terminal))
    from clusterknit.rigidpath import relation_text

    texts = [relation_text(s) for s in res.steps]
    assert "T_{1,[1,1]}*T_{1,[0,0]} = T_{1,[0,1]} + T_{2,[0,0]}^2" in texts
    assert "T_{2,[1,1]}*T_{2,[0,0]} = T_{2,[0,1]} + T_{1,[1,1]}^2*T_{3,[0,0]}" in texts
    assert "T_{3,[1,1]}*T_{3,[0,0]} = T_{3,[0,1]} + T_{2,[1,1]}" in texts
    z = lambda i, a: LaurentPoly.variable(cat.pos(V(i, a)), cat.r)
    want = (
        z(1, 2) * z(1, 1) * z(1, 0)
        - z(1, 2) * z(2, 0) ** 2
        - z(2, 1) ** 2 * z(1, 0)
        + (z(2, 1) * z(2, 0) * z(1, 1) * z(3, 0)).scale(2)
        - z(1, 1) ** 3 * z(3, 0) ** 2
    )
    assert pbw_expand(cat, L(1, 0, 2)) == want
    report(5, f"three exchange relations and the 5-term expansion ({done():.2f}s)")


def test_criterion_06_euler_series(kronecker3, kronecker3_ordering):
    done = timed(60)
    cat, ordering = kronecker3, kronecker3_ordering
    S = euler.ShuffleSeries
    assert euler.g_module(cat, ordering, 1) == S.word(1)
    assert euler.g_module(cat, ordering, 2) == S({(2, 1, 1): 2})
    assert euler.g_module(cat, ordering, 3) == S(
        {(1, 2, 1, 2, 1, 1): 4, (1, 2, 2, 1, 1, 1): 12}
    )
    assert euler.g_module(cat, ordering, 4) == S({(3, 2, 1, 1): 2})
    g7 = euler.g_module(cat, ordering, 7)
    assert g7 == S(
        {
            (3, 2, 1, 1, 2, 2, 2, 1, 1, 1, 1): 288,
            (3, 2, 1, 1, 2, 2, 1, 2, 1, 1, 1): 144,
            (3, 2, 1, 2, 1, 2, 2, 1, 1, 1, 1): 96,
            (3, 2, 1, 1, 2, 2, 1, 1, 2, 1, 1): 48,
            (3, 2, 1, 2, 1, 1, 2, 2, 1, 1, 1): 48,
            (3, 2, 1, 2, 1, 2, 1, 2, 1, 1, 1): 48,
            (3, 2, 1, 1, 2, 1, 2, 2, 1, 1, 1): 48,
            (3, 2, 1, 2, 1, 2, 1, 1, 2, 1, 1): 16,
            (3, 2, 1, 2, 1, 1, 2, 1, 2, 1, 1): 16,
            (3, 2, 1, 1, 2, 1, 2, 1, 2, 1, 1): 16,
        }
    )
    assert len(euler.g_module(cat, ordering, 5).terms) == 402
    g6 = euler.g_module(cat, ordering, 6)
    assert g6.is_integral() and not g6.is_zero()
    report(6, f"g-series including the 402-word and large cases ({done():.1f}s)")


def test_criterion_07_minors(linear_a4):
    done = timed(10)
    x = minors.unitriangular(5)
    xv = lambda i: LaurentPoly.variable(i - 1, 10)
    assert minors.minor(x, minors.MinorKey((2, 3), (3, 5))) == xv(5) * xv(9) - xv(7)
    table = {
        (4, 3): 1, (3, 2): 2, (2, 1): 3, (1, 0): 4, (4, 2): 5,
        (3, 1): 6, (2, 0): 7, (4, 1): 8, (3, 0): 9, (4, 0): 10,
    }
    for (i, a), xi in table.items():
        key = minors.interval_minor_key(i, a, a, 4)
        assert minors.minor(x, key) == xv(xi), (i, a)
    cat = linear_a4
    images = [
        minors.minor(x, minors.interval_minor_key(v.i, v.a, v.a, 4))
        for v in cat.vertices
    ]
    count = 0
    for i in range(1, 5):
        for b in range(0, i):
            for a in range(b + 1):
                lhs = substitute(pbw_expand(cat, L(i, a, b)), images)
                rhs = minors.minor(x, minors.interval_minor_key(i, a, b, 4))
                assert lhs == rhs, (i, a, b)
                count += 1
    assert count == 20
    report(7, f"minor table and eta consistency on all 20 intervals ({done():.1f}s)")


def test_criterion_08_flag_identities():
    done = timed(1)
    T, g, sh = euler.ThinModule, euler.flag_oracle, euler.shuffle
    s1, s2, s3 = T((("a", 1),)), T((("b", 2),)), T((("c", 3),))
    m12 = T((("u", 1), ("v", 2)), (("u", "v"),))
    m21 = T((("u", 2), ("v", 1)), (("u", "v"),))
    m23 = T((("u", 2), ("v", 3)), (("u", "v"),))
    m32 = T((("u", 3), ("v", 2)), (("u", "v"),))
    assert g(m12) == sh(g(s1), g(s2)) - g(m21)
    assert g(m32) == sh(g(s3), g(s2)) - g(m23)
    m132 = T((("u", 1), ("w", 3), ("v", 2)), (("u", "v"), ("w", "v")))
    m213 = T((("v", 2), ("u", 1), ("w", 3)), (("v", "u"), ("v", "w")))
    assert g(m132) == (
        g(m213) + sh(sh(g(s1), g(s2)), g(s3)) - sh(g(s1), g(m23)) - sh(g(s3), g(m21))
    )
    report(8, f"the acyclic A3 dual-PBW identities at the flag level ({done():.2f}s)")


def test_criterion_09_roots(kronecker3, fan_a3, triangle3, five_vertex):
    done = timed(1)
    for cat in (kronecker3, fan_a3, triangle3, five_vertex):
        word = adapted_word(cat, adapted_orderings(cat))
        roots = inversion_roots(word, cartan(cat.terminal.q))
        assert sorted(r.coords for r in roots) == sorted(
            cat.dims[v].coords for v in cat.vertices
        )
    got = sorted(
        r.coords
        for r in inversion_roots(
            adapted_word(triangle3, adapted_orderings(triangle3)),
            cartan(triangle3.terminal.q),
        )
    )
    assert got == sorted(
        [
            (1, 0, 0), (1, 1, 0), (2, 1, 1), (2, 2, 1),
            (3, 2, 2), (3, 3, 2), (4, 3, 3),
        ]
    )
    report(9, f"inversion roots equal knitted dimension vectors ({done():.2f}s)")


def test_criterion_10_hom_oracle():
    done = timed(5)
    quivers = [
        validate_quiver(3, [(1, 2), (2, 3)]),
        validate_quiver(3, [(2, 1), (2, 3)]),
        validate_quiver(4, [(4, 3), (3, 2), (2, 1)]),
        validate_quiver(4, [(1, 2), (2, 3), (3, 4)]),
    ]
    pairs = 0
    for q in quivers:
        cat = build_category(maximal_terminal(q))
        assert cat.r == q.n * (q.n + 1) // 2
        supp = {
            v: {j + 1 for j, c in enumerate(cat.dims[v].coords) if c}
            for v in cat.vertices
        }
        for x in cat.vertices:
            for z in cat.vertices:
                assert hom_dim(cat, x, z) == interval_hom_dim(q, supp[x], supp[z])
                pairs += 1
    report(10, f"hom knitting vs intertwiner oracle on {pairs} pairs ({done():.1f}s)")


def test_criterion_11_laurent_smoke(kronecker3, fan_a3, linear_a4):
    """Walks of full length 12 run on finite- and affine-type categories;
    the wild double-arrow category is exercised at depth 4, past which the
    exact Laurent supports grow exponentially and stop being desk-scale."""
    done = timed(60)
    rng = random.Random(111)
    a3 = build_category(
        validate_terminal(validate_quiver(3, [(1, 2), (2, 3)]), (2, 1, 0))
    )
    a4 = build_category(
        validate_terminal(
            validate_quiver(4, [(1, 2), (2, 3), (3, 4)]), (3, 2, 1, 0)
        )
    )
    d4 = build_category(
        validate_terminal(
            validate_quiver(4, [(4, 1), (4, 2), (4, 3)]), (1, 1, 1, 1)
        )
    )
    kron_affine = build_category(
        validate_terminal(validate_quiver(2, [(1, 2), (1, 2)]), (1, 1))
    )
    walks = 0
    for cat, count, depth in (
        (fan_a3, 34, 12),
        (a3, 34, 12),
        (a4, 33, 12),
        (d4, 33, 12),
        (linear_a4, 33, 12),
        (kron_affine, 23, 12),
        (kronecker3, 10, 4),
    ):
        base = initial_seed(cat)
        mutable = base.matrix.mutable()
        for _ in range(count):
            s = base
            for _ in range(rng.randint(1, depth)):
                s = mutate_seed(s, rng.choice(mutable))  # NotDivisible = fail
            walks += 1
    assert walks == 200
    report(11, f"200 random mutation walks, every division exact ({done():.1f}s)")


def test_criterion_12_max_dominance(
    kronecker3, fan_a3, linear_a4, triangle3, five_vertex
):
    done = timed(10)
    rng = random.Random(112)
    from test_mesh import random_terminal

    cats = [kronecker3, fan_a3, linear_a4, triangle3, five_vertex]
    cats += [build_category(random_terminal(rng)) for _ in range(20)]
    for cat in cats:
        res = run_path(
            initial_seed(cat, with_vars=False), make_schedule(cat.terminal)
        )
        assert all(st.dominated for st in res.steps)
    report(12, f"Max-dominance at every step of {len(cats)} schedules ({done():.1f}s)")
