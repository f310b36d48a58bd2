"""Generators of the rotation subgroup of the Coxeter group [5,3,5] in SO+(1,3).

The group is built from the reflections in the faces of the compact Coxeter
simplex with diagram 5-3-5, conjugated so that an interior point of the
simplex sits at o = (1,0,0,0). The list holds all products of two reflections
and of two such products (identity and duplicates dropped), which is more
than enough for greedy reduction. The rotation subgroup has torsion, so the
quotient is an orbifold rather than a manifold.

    python3 make_coxeter535.py [out.json]
"""

import argparse
import json

import mpmath as mp

mp.mp.dps = 40


def gram_matrix():
    orders = {(0, 1): 5, (1, 2): 3, (2, 3): 5}
    g = mp.matrix(4, 4)
    for i in range(4):
        for j in range(4):
            g[i, j] = 1 if i == j else -mp.cos(mp.pi / orders.get((min(i, j), max(i, j)), 2))
    return g


def face_normals(g):
    # Normals e_i with <e_i, e_j> = G_ij for the form diag(-1, 1, 1, 1).
    evals, evecs = mp.eighe(g)
    order = sorted(range(4), key=lambda k: evals[k])  # the negative eigenvalue first
    s = mp.matrix(4, 4)
    for r, k in enumerate(order):
        for i in range(4):
            s[r, i] = mp.sqrt(abs(evals[k])) * evecs[i, k]
    jp = mp.diag([-1, 1, 1, 1])
    normals = [s[:, i] for i in range(4)]
    for i in range(4):
        for j in range(4):
            assert abs((normals[i].T * jp * normals[j])[0] - g[i, j]) < 1e-30
    return normals, jp


def interior_boost(normals, jp):
    # A timelike point strictly inside every face, and the boost taking o to it.
    j = mp.diag([1, -1, -1, -1])
    a = mp.matrix(4, 4)
    for i in range(4):
        row = normals[i].T * jp
        for k in range(4):
            a[i, k] = row[k]
    p = mp.lu_solve(a, -mp.matrix([1, 1.3, 0.9, 1.1]))
    if p[0] < 0:
        p = -p
    p = p / mp.sqrt((p.T * j * p)[0])
    x = mp.matrix([p[1], p[2], p[3]])
    r = mp.norm(x)
    n = x / r
    b = mp.eye(4)
    b[0, 0] = p[0]
    for i in range(3):
        b[0, i + 1] = b[i + 1, 0] = r * n[i]
        for k in range(3):
            b[i + 1, k + 1] = (1 if i == k else 0) + (p[0] - 1) * n[i] * n[k]
    assert mp.norm(b * mp.matrix([1, 0, 0, 0]) - p) < 1e-30
    return b


def generators():
    normals, jp = face_normals(gram_matrix())
    refl = [mp.eye(4) - 2 * normals[i] * (normals[i].T * jp) for i in range(4)]
    b = interior_boost(normals, jp)
    h = mp.inverse(b)

    words = [refl[i] * refl[k] for i in range(4) for k in range(4) if i != k]
    words += [u * v for u in list(words) for v in list(words)]
    j = mp.diag([1, -1, -1, -1])
    out = []
    for w in words:
        g = h * w * b
        if mp.norm(g - mp.eye(4)) < 1e-20 or any(mp.norm(g - u) < 1e-20 for u in out):
            continue
        assert mp.norm(g.T * j * g - j) < 1e-25
        out.append(g)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out", nargs="?", default="coxeter535.json")
    args = ap.parse_args()
    gens = generators()
    doc = {
        "label": "coxeter-535-rotation",
        "diameter_hint": 1.0,
        "generators": [[[float(g[i, k]) for k in range(4)] for i in range(4)] for g in gens],
    }
    with open(args.out, "w") as f:
        json.dump(doc, f)
    print(f"{len(gens)} generators -> {args.out}")


if __name__ == "__main__":
    main()
