#!/usr/bin/env python3
"""Derive the GKM graph of the T^3-action on the Stiefel manifold V_2(R^5).

V_2(R^5) = SO(5)/SO(3) is modelled as the space of orthonormal 2-frames A
(5x2 matrices).  The torus T^3 acts by A -> g A h^{-1}, where g rotates the
(e1,e2) and (e3,e4) planes of R^5 and h is a rotation of the frame.  Torus
coordinates are (a, b, c): a rotates (e1,e2), b rotates (e3,e4), c rotates
the frame.

For each of the four one-dimensional orbits (frames spanning the e1e2 or the
e3e4 plane, with either orientation) we compute
  * the isotropy algebra t_v (kernel of X -> X.A),
  * the weights of t_v on the normal space of the orbit,
  * the edge isotropy t_e = ker(weight) inside t_v.
Edges join the two vertices sharing the same t_e.  Output is the graph JSON
accepted by `gkm` (and frozen in crates/core/src/builtin.rs).

Usage: python3 scripts/derive_stiefel.py > stiefel.json
"""
import itertools
import json

import sympy as sp


def E(i, j, n=5):
    m = sp.zeros(n, n)
    m[i, j] = 1
    m[j, i] = -1
    return m


# Lie algebra generators of T^3 acting on frames: (left generator, right generator).
J2 = sp.Matrix([[0, 1], [-1, 0]])
GENS = [
    (E(0, 1), sp.zeros(2, 2)),  # a
    (E(2, 3), sp.zeros(2, 2)),  # b
    (sp.zeros(5, 5), J2),       # c
]


def act(X, A):
    """Infinitesimal action of X = (x_a, x_b, x_c) on a frame A."""
    left = sum((x * g for x, (g, _) in zip(X, GENS)), sp.zeros(5, 5))
    right = sum((x * h for x, (_, h) in zip(X, GENS)), sp.zeros(2, 2))
    return left * A - A * right


def col(A):
    return sp.Matrix(list(A))


def canonical(vectors, dim):
    if not vectors:
        return []
    m = sp.Matrix.vstack(*[sp.Matrix([list(v)]) for v in vectors]).rref()[0]
    return [list(m.row(i)) for i in range(m.rows) if any(x != 0 for x in m.row(i))]


def frame(u, v):
    return sp.Matrix.hstack(u, v)


e = [sp.Matrix([1 if k == i else 0 for k in range(5)]) for i in range(5)]
VERTICES = {
    "p12p": frame(e[0], e[1]),
    "p12n": frame(e[0], -e[1]),
    "p34p": frame(e[2], e[3]),
    "p34n": frame(e[2], -e[3]),
}


def isotropy(A):
    x = sp.symbols("x0:3")
    eqs = list(act(x, A))
    sol = sp.linsolve(eqs, x)
    (gen,) = sol
    free = sorted(set().union(*[s.free_symbols for s in gen]), key=str)
    basis = []
    for f in free:
        basis.append([s.subs({g: (1 if g == f else 0) for g in free}) for s in gen])
    return canonical(basis, 3)


def tangent_space(A):
    """Basis of T_A V_2 = {dA : A^T dA + dA^T A = 0}."""
    syms = sp.symbols("d0:10")
    dA = sp.Matrix(5, 2, syms)
    eqs = list(A.T * dA + dA.T * A)
    sol = sp.linsolve(eqs, syms)
    (gen,) = sol
    free = sorted(set().union(*[s.free_symbols for s in gen]), key=str)
    return [sp.Matrix([s.subs({g: (1 if g == f else 0) for g in free}) for s in gen]) for f in free]


def weights(A, tv):
    """Weights of the isotropy algebra on the normal space of the orbit through A.

    Returns each weight as its values on the basis vectors of t_v.
    """
    tangent = tangent_space(A)
    orbit = [col(act(X, A)) for X in ([1, 0, 0], [0, 1, 0], [0, 0, 1])]
    orbit_span = sp.Matrix.hstack(*orbit).columnspace()
    # orthogonal complement of the orbit inside the tangent space
    T = sp.Matrix.hstack(*tangent)
    constraints = sp.Matrix.vstack(*[o.T * T for o in orbit_span])
    normal = [T * v for v in constraints.nullspace()]
    N = sp.Matrix.hstack(*normal)
    # operators of the isotropy basis on the normal space (in the basis N)
    ops = []
    for X in tv:
        images = sp.Matrix.hstack(*[col(act(X, sp.Matrix(5, 2, list(n)))) for n in normal])
        ops.append((N.T * N).inv() * N.T * images)
    generic = sum((k * op for k, op in zip([3, 7], ops)), sp.zeros(N.cols, N.cols))
    found = []
    for val, mult, vecs in generic.eigenvects():
        if sp.im(val) <= 0:
            continue
        v = vecs[0]
        w = []
        for op in ops:
            img = op * v
            idx = next(i for i in range(v.rows) if v[i] != 0)
            w.append(sp.simplify(img[idx] / v[idx] / sp.I))
        found.append(w)
    return found


def main():
    verts = []
    edge_iso = {}
    for vid, A in VERTICES.items():
        tv = isotropy(A)
        verts.append({"id": vid, "isotropy": tv})
        for w in weights(A, tv):
            # kernel of the weight inside t_v, expressed in ambient coordinates
            coeffs = sp.Matrix([w]).nullspace()
            te = canonical([list(sum((c * sp.Matrix(b) for c, b in zip(k, tv)), sp.zeros(3, 1))) for k in coeffs], 3)
            edge_iso.setdefault(tuple(map(tuple, te)), []).append(vid)
    edges = []
    order = list(VERTICES)
    for te, ends in sorted(edge_iso.items(), key=lambda kv: sorted(order.index(v) for v in kv[1])):
        assert len(ends) == 2, (te, ends)
        s, t = sorted(ends, key=order.index)
        edges.append({"id": f"{s}-{t}", "source": s, "target": t, "isotropy": [list(r) for r in te]})

    def fmt(x):
        x = sp.Rational(x)
        return int(x) if x.q == 1 else f"{x.p}/{x.q}"

    for v in verts:
        v["isotropy"] = [[fmt(x) for x in row] for row in v["isotropy"]]
    for ed in edges:
        ed["isotropy"] = [[fmt(x) for x in row] for row in ed["isotropy"]]
    graph = {"rank": 3, "manifold_dim": 7, "bottom_orbit_dim": 1, "vertices": verts, "edges": edges}
    print(json.dumps(graph, indent=2))


if __name__ == "__main__":
    main()
