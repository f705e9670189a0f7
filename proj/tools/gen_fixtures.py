#!/usr/bin/env python3
"""Regenerate the group and q-expansion fixtures under fixtures/.

Coefficients come from point counts on the strong Weil curves 11a1, 37a1 and
37b1; the level-11 form is cross-checked against the eta product
eta(z)^2 eta(11z)^2.  Generators of Gamma_0(N) come from Reidemeister-Schreier
on the coset action of SL2(Z) = <S, T> on P^1(Z/N).
"""
import json
import os
import sys
from collections import deque

CURVES = {
    "11a": (11, (0, -1, 1, -10, -20)),
    "37a": (37, (0, 0, 1, -1, 0)),
    "37b": (37, (0, 1, 1, -23, -50)),
}


def is_prime(n):
    return n >= 2 and all(n % p for p in range(2, int(n ** 0.5) + 1))


def ap_point_count(coeffs, p):
    a1, a2, a3, a4, a6 = coeffs
    count = 0
    for x in range(p):
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % p
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - rhs) % p == 0:
                count += 1
    return p - count


def coefficients_from_curve(level, coeffs, n_max):
    a = [0] * (n_max + 1)
    a[1] = 1
    ap = {p: ap_point_count(coeffs, p) for p in range(2, n_max + 1) if is_prime(p)}
    # prime powers
    pp = {}
    for p, v in ap.items():
        pp[(p, 0)] = 1
        pp[(p, 1)] = v
        e, q = 1, p
        while q * p <= n_max:
            if level % p == 0:
                pp[(p, e + 1)] = v * pp[(p, e)]
            else:
                pp[(p, e + 1)] = v * pp[(p, e)] - p * pp[(p, e - 1)]
            e += 1
            q *= p
    for n in range(2, n_max + 1):
        m, val, p = n, 1, 2
        while m > 1:
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                val *= pp[(p, e)]
            p += 1
        a[n] = val
    return a[1:]


def eta_product_11(n_max):
    # q * prod (1-q^n)^2 (1-q^{11n})^2
    poly = [0] * (n_max + 1)
    poly[0] = 1
    def mul_factor(step):
        for _ in range(2):
            for i in range(n_max, step - 1, -1):
                poly[i] -= poly[i - step]
    for n in range(1, n_max + 1):
        mul_factor(n)
        if 11 * n <= n_max:
            mul_factor(11 * n)
    return poly[:n_max]  # coefficient of q^{k+1} is poly[k]


def square_series(a):
    n_max = len(a)
    out = [0] * n_max
    for i in range(n_max):
        for j in range(n_max - i - 1):
            out[i + j + 1] += a[i] * a[j]
    return out


def mat_mul(x, y):
    return (x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3])


def mat_inv(x):
    return (x[3], -x[1], -x[2], x[0])


def canonical(m):
    # representative modulo +-1
    if m[2] < 0 or (m[2] == 0 and m[3] < 0):
        return tuple(-v for v in m)
    return m


def schreier_generators(level):
    s, t = (0, -1, 1, 0), (1, 1, 0, 1)

    def coset_key(m):
        # Gamma_0(N) g <-> (c : d) in P^1(Z/N)
        c, d = m[2] % level, m[3] % level
        if c == 0:
            return (0, 1)
        inv = pow(c, -1, level)
        return (1, (d * inv) % level)

    identity = (1, 0, 0, 1)
    reps = {coset_key(identity): identity}
    queue = deque([identity])
    tree_edges = set()
    while queue:
        g = queue.popleft()
        for name, x in (("S", s), ("T", t)):
            h = mat_mul(g, x)
            key = coset_key(h)
            if key not in reps:
                reps[key] = h
                tree_edges.add((coset_key(g), name))
                queue.append(h)
    gens = []
    seen = set()
    for key, g in sorted(reps.items()):
        for name, x in (("S", s), ("T", t)):
            if (key, name) in tree_edges:
                continue
            h = mat_mul(g, x)
            elem = canonical(mat_mul(h, mat_inv(reps[coset_key(h)])))
            if elem == (1, 0, 0, 1) or elem in seen:
                continue
            assert elem[2] % level == 0
            assert elem[0] * elem[3] - elem[1] * elem[2] == 1
            seen.add(elem)
            gens.append(elem)
    return gens


def dim_cusp_forms(level, genus, k):
    if k == 2:
        return genus
    e2 = sum(1 for x in range(level) if (x * x + 1) % level == 0)
    e3 = sum(1 for x in range(level) if (x * x + x + 1) % level == 0)
    cusps = 2
    return (k - 1) * (genus - 1) + (k // 2 - 1) * cusps + e2 * (k // 4) + e3 * (k // 3)


def write_qseries(path, label, weight, level, coeffs, tail_constant, tail_exponent):
    with open(path, "w") as out:
        out.write("# format: hoform-qseries/1\n")
        out.write(f"# label: {label}\n# weight: {weight}\n# level: {level}\n")
        out.write(f"# N: {len(coeffs)}\n")
        out.write(f"# tail: {tail_constant} {tail_exponent}\n")
        for c in coeffs:
            out.write(f"{c}\n")


def write_group(path, label, level, genus, forms, weights):
    gens = schreier_generators(level)
    data = {
        "format": "hoform-group/1",
        "label": label,
        "level": level,
        "genus": genus,
        "cusps": [
            {"label": "0", "representative": [0, 1], "width": level,
             "scaling": [0, -1, 1, 0], "parabolic": [1, 0, -level, 1]},
            {"label": "inf", "representative": [1, 0], "width": 1,
             "scaling": [1, 0, 0, 1], "parabolic": [1, 1, 0, 1]},
        ],
        "generators": [list(g) for g in gens],
        "cusp_forms": forms,
        "dim_cusp_forms": {str(k): dim_cusp_forms(level, genus, k) for k in weights},
    }
    with open(path, "w") as out:
        json.dump(data, out, indent=1)
        out.write("\n")


def main():
    root = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "fixtures")
    n_max = 400
    series = {label: coefficients_from_curve(level, c, n_max) for label, (level, c) in CURVES.items()}
    eta = eta_product_11(n_max)
    if eta != series["11a"]:
        raise SystemExit("11a: eta product and point counts disagree")
    for label, coeffs in series.items():
        level = CURVES[label][0]
        write_qseries(os.path.join(root, f"{label}.qexp"), label, 2, level, coeffs, 2, 1)
    write_qseries(os.path.join(root, "11a_sq.qexp"), "11a_sq", 4, 11, square_series(series["11a"]), 1, 3)
    write_group(os.path.join(root, "level11.json"), "Gamma0(11)", 11, 1, {"2": ["11a.qexp"], "4": ["11a_sq.qexp"]}, [2, 4, 6])
    write_group(os.path.join(root, "level37.json"), "Gamma0(37)", 37, 2, {"2": ["37a.qexp", "37b.qexp"]}, [2, 4, 6])


if __name__ == "__main__":
    main()
