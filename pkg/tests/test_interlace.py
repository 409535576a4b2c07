import pytest

from flatspec.boolfunc import anf_to_function, quadratic_of_graph
from flatspec.graph import Graph, complete_graph, path_graph
from flatspec.interlace import IntPolynomial, Q_eval, Q_poly, q_poly
from flatspec.orbits import GateError, local_complement
from flatspec.transform import count_flat


def pivot_q(adj: dict):
    """q by the edge-pivot recursion q(G) = q(G - a) + q(G^ab - b), q(edgeless_k) = x^k.

    G*a*b*a is the pivot with the roles of a and b exchanged, so b's slot is a there.
    """
    for a, nb in adj.items():
        if nb:
            b = min(nb)
            break
    else:
        return IntPolynomial((0,) * len(adj) + (1,))
    piv = _lc(_lc(_lc(adj, a), b), a)
    return _add(pivot_q(_delete(adj, a)), pivot_q(_delete(piv, a)))


def _lc(adj, v):
    out = {u: set(s) for u, s in adj.items()}
    for u in adj[v]:
        out[u] ^= adj[v] - {u}
    return out


def _delete(adj, v):
    return {u: s - {v} for u, s in adj.items() if u != v}


def _add(p, q):
    size = max(len(p.coeffs), len(q.coeffs))
    a = p.coeffs + (0,) * (size - len(p.coeffs))
    b = q.coeffs + (0,) * (size - len(q.coeffs))
    return IntPolynomial(tuple(x + y for x, y in zip(a, b)))


def as_adj(g):
    return {v: set(g.neighbors(v)) for v in range(g.n)}


def trimmed(p):
    c = list(p.coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def test_edgeless_is_power():
    for n in range(1, 7):
        assert trimmed(q_poly(Graph.empty(n))) == (0,) * n + (1,)


def test_single_edge():
    assert trimmed(q_poly(path_graph(2))) == (0, 2)
    assert str(q_poly(path_graph(2))) == "2*x"


def test_path_and_clique_at_one():
    assert q_poly(path_graph(4))(1) == 5
    for n in range(1, 9):
        assert q_poly(complete_graph(n))(1) == 2 ** (n - 1)


def test_Q_examples():
    assert Q_eval(path_graph(4), 2) == 44
    for n in (2, 3, 4):
        assert Q_eval(complete_graph(n), 2) == (n + 1) * 2 ** (n - 1)
    assert Q_eval(Graph.empty(1), 2) == 2


def test_Q_poly_agrees_with_eval(rng):
    for _ in range(10):
        n = int(rng.integers(1, 6))
        g = Graph.from_code(n, int(rng.integers(0, 1 << (n * (n - 1) // 2))))
        p = Q_poly(g)
        for x in range(-2, 5):
            assert p(x) == Q_eval(g, x)


def test_sum_form_matches_pivot_recursion(rng):
    for _ in range(30):
        n = int(rng.integers(1, 7))
        g = Graph.from_code(n, int(rng.integers(0, 1 << (n * (n - 1) // 2))))
        assert trimmed(q_poly(g)) == trimmed(pivot_q(as_adj(g)))


def test_Q_invariant_under_lc(rng):
    for _ in range(10):
        g = Graph.from_code(5, int(rng.integers(0, 1 << 10)))
        h = local_complement(g, int(rng.integers(0, 5)))
        assert Q_eval(g, 2) == Q_eval(h, 2)


def test_flat_count_identities_n4():
    for code in range(1 << 6):
        g = Graph.from_code(4, code)
        f = anf_to_function(quadratic_of_graph(g))
        assert q_poly(g)(1) == count_flat(f, "ih", "spectral").flat_count
        assert Q_eval(g, 2) == count_flat(f, "ihn", "spectral").flat_count


def test_polynomial_formatting():
    assert str(IntPolynomial((1, -3, 0, 1))) == "x^3 + -3*x + 1"
    assert str(IntPolynomial((0,))) == "0"
    assert IntPolynomial((1, 2, 3)).degree == 2


def test_gates():
    with pytest.raises(GateError):
        q_poly(Graph.empty(15))
    with pytest.raises(GateError):
        Q_eval(Graph.empty(11), 2)
