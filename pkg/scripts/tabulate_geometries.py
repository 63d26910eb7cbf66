#!/usr/bin/env python3
"""Write the small geometry fixtures to src/permlab/data/geometries.json.

Projective planes over F_2 and F_3 with their collineation generators,
and affine planes with affine-map generators.  Points, lines, and group
orders are tabulated here by direct linear algebra so the package tests
have an independent reference; nothing below imports the package.
"""

import itertools
import json
import pathlib


def normalize(vector, q):
    # scale a nonzero vector so its first nonzero coordinate is 1 (q prime)
    for c in vector:
        if c:
            inv = pow(c, q - 2, q)
            return tuple((x * inv) % q for x in vector)
    return None


def projective_points(q):
    pts = {normalize(v, q) for v in itertools.product(range(q), repeat=3)}
    pts.discard(None)
    return sorted(pts)


def projective_lines(q, points):
    lines = set()
    for f in itertools.product(range(q), repeat=3):
        if not any(f):
            continue
        members = tuple(
            i
            for i, p in enumerate(points)
            if sum(a * b for a, b in zip(f, p)) % q == 0
        )
        lines.add(members)
    return sorted(lines)


def primitive_root(q):
    for g in range(2, q):
        powers = set()
        x = 1
        for _ in range(q - 1):
            x = x * g % q
            powers.add(x)
        if len(powers) == q - 1:
            return g
    raise ValueError(f"no primitive root mod {q}")


def gl_generators(dim, q):
    # transvections generate SL; one diagonal matrix extends to GL when q > 2
    eye = [[int(i == j) for j in range(dim)] for i in range(dim)]
    mats = []
    for i in range(dim):
        for j in range(dim):
            if i == j:
                continue
            m = [row[:] for row in eye]
            m[i][j] = 1
            mats.append(tuple(tuple(r) for r in m))
    if q > 2:
        m = [row[:] for row in eye]
        m[0][0] = primitive_root(q)
        mats.append(tuple(tuple(r) for r in m))
    return mats


def apply_matrix(vector, matrix, q):
    dim = len(vector)
    return tuple(
        sum(vector[r] * matrix[r][c] for r in range(dim)) % q for c in range(dim)
    )


def cycle_string(images):
    seen = set()
    parts = []
    for start in range(len(images)):
        if start in seen or images[start] == start:
            seen.add(start)
            continue
        cyc = [start]
        seen.add(start)
        nxt = images[start]
        while nxt != start:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = images[nxt]
        parts.append("(" + " ".join(str(p + 1) for p in cyc) + ")")
    return "".join(parts) or "()"


def projective_fixture(q):
    points = projective_points(q)
    index = {p: i for i, p in enumerate(points)}
    gens = []
    for m in gl_generators(3, q):
        images = [index[normalize(apply_matrix(p, m, q), q)] for p in points]
        gens.append(cycle_string(images))
    order = 1
    for k in range(3):
        order *= q**3 - q**k
    order //= q - 1
    return {
        "degree": len(points),
        "generators": gens,
        "points": ["".join(map(str, p)) for p in points],
        "lines": [list(line) for line in projective_lines(q, points)],
        "order": order,
    }


def affine_fixture(q):
    points = sorted(itertools.product(range(q), repeat=2))
    index = {p: i for i, p in enumerate(points)}
    gens = []
    for m in gl_generators(2, q):
        images = [index[apply_matrix(p, m, q)] for p in points]
        gens.append(cycle_string(images))
    for shift in ((1, 0), (0, 1)):
        images = [
            index[tuple((a + b) % q for a, b in zip(p, shift))] for p in points
        ]
        gens.append(cycle_string(images))
    lines = set()
    for base in points:
        for direction in points:
            if direction == (0, 0):
                continue
            members = tuple(
                sorted(
                    index[tuple((b + t * d) % q for b, d in zip(base, direction))]
                    for t in range(q)
                )
            )
            lines.add(members)
    order = q**2
    for k in range(2):
        order *= q**2 - q**k
    return {
        "degree": len(points),
        "generators": gens,
        "points": ["".join(map(str, p)) for p in points],
        "lines": [list(line) for line in sorted(lines)],
        "order": order,
    }


def main():
    data = {
        "pg_2_2": projective_fixture(2),
        "pg_2_3": projective_fixture(3),
        "ag_2_2": affine_fixture(2),
        "ag_2_3": affine_fixture(3),
    }
    root = pathlib.Path(__file__).resolve().parent.parent
    out = root / "src" / "permlab" / "data" / "geometries.json"
    out.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
