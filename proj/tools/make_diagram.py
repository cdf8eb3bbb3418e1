#!/usr/bin/env python3
"""Build diagram JSON from Lagrangian projections drawn as closed rational polylines.

Each component is a closed polyline (x_i, y_i).  Its Legendrian lift has
z = z0 + integral of y dx along the curve, so a component closes up exactly when its
signed area vanishes; `balance` names a vertex whose y coordinate is solved for to
force that.  Crossing heights are the exact z gaps.  Everything is done in Fractions.

Source file (JSON):
  {"comment": "...",
   "components": {"K": {"points": [[x, y], ...] | "param": {...}, "z0": "0",
                        "balance": 3, "offset": [dx, dy]}},
   "copy": {"T": {"of": "K", "offset": ["1/10", "1/20"], "z0": "1/2"}},
   "rename": {"x0": "a", ...}, "contractible": ["a"], "component_shifts": {...},
   "heights": "lp", "over": {"x0": "first"|"second"}, "surgery": ["a"],
   "round": 100000}

  param: {"x": "cos(t)", "y": "-1.5*sin(2*t)", "samples": 60, "denominator": 1000}

Usage: make_diagram.py source.json out.json [--list]
"""

import argparse
import json
import math
import sys
from fractions import Fraction as F


def frac(v):
    return F(v) if not isinstance(v, str) else F(v)


def sample_param(p):
    n = int(p.get("samples", 80))
    den = int(p.get("denominator", 1000))
    env = {k: getattr(math, k) for k in ("sin", "cos", "pi", "sqrt", "exp")}
    pts = []
    for i in range(n):
        env["t"] = 2 * math.pi * i / n
        x = eval(p["x"], {"__builtins__": {}}, env)
        y = eval(p["y"], {"__builtins__": {}}, env)
        pts.append([F(round(x * den), den), F(round(y * den), den)])
    return pts


def signed_integral(pts):
    # closed-curve integral of y dx
    s = F(0)
    n = len(pts)
    for i in range(n):
        (x1, y1), (x2, y2) = pts[i], pts[(i + 1) % n]
        s += (y1 + y2) / 2 * (x2 - x1)
    return s


def balance(pts, i):
    n = len(pts)
    coeff = (pts[(i + 1) % n][0] - pts[(i - 1) % n][0]) / 2
    if coeff == 0:
        sys.exit(f"cannot balance at vertex {i}: neighbours share x")
    rest = signed_integral(pts) - coeff * pts[i][1]
    pts[i][1] = -rest / coeff


def intersect(p1, p2, q1, q2):
    r = (p2[0] - p1[0], p2[1] - p1[1])
    s = (q2[0] - q1[0], q2[1] - q1[1])
    den = r[0] * s[1] - r[1] * s[0]
    if den == 0:
        return None
    qp = (q1[0] - p1[0], q1[1] - p1[1])
    t = (qp[0] * s[1] - qp[1] * s[0]) / den
    u = (qp[0] * r[1] - qp[1] * r[0]) / den
    if 0 <= t < 1 and 0 <= u < 1:
        if t == 0 or u == 0:
            sys.exit("degenerate crossing at a polyline vertex; perturb the points")
        return t, u
    return None


def angle(v):
    return math.atan2(float(v[1]), float(v[0]))


def build(spec, over_override=None, geom=None):
    geom = geom or geometry(spec)
    return assemble(spec, geom, over_override)


def geometry(spec):
    lp = spec.get("heights") is not None
    comps = {}
    for name, c in spec["components"].items():
        pts = [[frac(x), frac(y)] for x, y in c["points"]] if "points" in c else sample_param(c["param"])
        off = [frac(v) for v in c.get("offset", [0, 0])]
        pts = [[x + off[0], y + off[1]] for x, y in pts]
        if "balance" in c:
            balance(pts, int(c["balance"]))
        comps[name] = {"pts": pts, "z0": frac(c.get("z0", "0"))}
    for name, c in spec.get("copy", {}).items():
        src = comps[c["of"]]
        off = [frac(v) for v in c.get("offset", [0, 0])]
        pts = [[x + off[0], y + off[1]] for x, y in src["pts"]]
        comps[name] = {"pts": pts, "z0": frac(c.get("z0", "0"))}
    for name, c in comps.items():
        a = signed_integral(c["pts"])
        if a != 0 and not lp:
            sys.exit(f"component {name} does not close up in z (signed area {a}); add 'balance'")

    # z at every vertex
    for c in comps.values():
        z = [c["z0"]]
        pts = c["pts"]
        for i in range(len(pts) - 1):
            (x1, y1), (x2, y2) = pts[i], pts[i + 1]
            z.append(z[-1] + (y1 + y2) / 2 * (x2 - x1))
        c["z"] = z

    def z_at(c, i, t):
        pts = c["pts"]
        (x1, y1), (x2, y2) = pts[i], pts[(i + 1) % len(pts)]
        dx, dy = x2 - x1, y2 - y1
        return c["z"][i] + dx * (y1 * t + dy * t * t / 2)

    segs = []
    for name, c in comps.items():
        n = len(c["pts"])
        for i in range(n):
            segs.append((name, i, c["pts"][i], c["pts"][(i + 1) % n]))
    raw = []
    for a in range(len(segs)):
        for b in range(a + 1, len(segs)):
            na, ia, p1, p2 = segs[a]
            nb, ib, q1, q2 = segs[b]
            if na == nb and (abs(ia - ib) <= 1 or abs(ia - ib) == len(comps[na]["pts"]) - 1):
                continue
            hit = intersect(p1, p2, q1, q2)
            if hit is None:
                continue
            t, u = hit
            pt = (p1[0] + t * (p2[0] - p1[0]), p1[1] + t * (p2[1] - p1[1]))
            za, zb = z_at(comps[na], ia, t), z_at(comps[nb], ib, u)
            if za == zb and spec.get("heights") is None:
                sys.exit(f"double point of the Legendrian at {pt}")
            raw.append({"pt": pt, "A": (na, ia, t, p1, p2, za), "B": (nb, ib, u, q1, q2, zb)})
    raw.sort(key=lambda r: (r["pt"][0], r["pt"][1]))
    return comps, raw


def assemble(spec, geom, over_override):
    comps, raw = geom
    lp = spec.get("heights") is not None
    rename = spec.get("rename", {})
    crossings, passages = [], {n: [] for n in comps}
    for idx, r in enumerate(raw):
        auto = f"x{idx}"
        cid = rename.get(auto, auto)
        strands = [r["A"], r["B"]]
        if lp and spec.get("over") != "geometric":
            choice = (over_override or spec.get("over", {})).get(auto, "first")
            over = 0 if choice == "first" else 1
        else:
            over = 0 if strands[0][5] > strands[1][5] else 1
        rays = []  # (angle, strand index, outgoing?)
        for s, (n, i, t, p, q, z) in enumerate(strands):
            d = (q[0] - p[0], q[1] - p[1])
            rays.append((angle(d), s, True))
            rays.append((angle((-d[0], -d[1])), s, False))
        rays.sort()
        start = next(k for k, ray in enumerate(rays) if ray[1] == over and ray[2])
        rays = rays[start:] + rays[:start]
        port = {(ray[1], ray[2]): k for k, ray in enumerate(rays)}
        for s in (0, 1):
            if (port[(s, True)] - port[(s, False)]) % 4 != 2:
                sys.exit("transversality failure at crossing " + cid)
        height = abs(strands[0][5] - strands[1][5])
        if spec.get("round"):
            # keeps the numbers small; face areas are re-checked by the loader
            height = F(round(height * int(spec["round"])), int(spec["round"]))
        crossings.append({"id": cid, "height": f"{height.numerator}/{height.denominator}",
                          "quadrants": ["+", "-", "+", "-"], "_pt": r["pt"],
                          "_strands": [(strands[s][0], over == s) for s in (0, 1)]})
        for s, (n, i, t, p, q, z) in enumerate(strands):
            passages[n].append((i, t, cid, port[(s, False)], port[(s, True)], r["pt"]))

    edges = []
    for n, ps in passages.items():
        if not ps:
            sys.exit(f"component {n} has no crossings")
        ps.sort()
        pts = comps[n]["pts"]
        for k in range(len(ps)):
            a, b = ps[k], ps[(k + 1) % len(ps)]
            poly = [a[5]]
            v = (a[0] + 1) % len(pts)
            stop = (b[0] + 1) % len(pts)
            if not (b[0] == a[0] and b[1] > a[1]):
                while True:
                    poly.append(tuple(pts[v]))
                    if v == b[0]:
                        break
                    v = (v + 1) % len(pts)
            poly.append(b[5])
            edges.append({"from": [a[2], a[4]], "to": [b[2], b[3]], "component": n, "_pts": poly})

    if spec.get("heights") == "lp":
        solve_heights(spec, crossings, edges, comps)

    out = {}
    if "comment" in spec:
        out["comment"] = spec["comment"]
    out["crossings"] = [{k: v for k, v in c.items() if not k.startswith("_")} for c in crossings]
    out["edges"] = [{k: v for k, v in e.items() if not k.startswith("_")} for e in edges]
    if spec.get("contractible"):
        out["contractible"] = spec["contractible"]
    if spec.get("component_shifts"):
        out["component_shifts"] = spec["component_shifts"]
    return out, crossings


def trace_faces(crossings, edges):
    """Faces with the face on the left: arriving at port q, leave through port q-1."""
    dep = {}
    for k, e in enumerate(edges):
        dep[tuple(e["from"])] = (k, True)
        dep[tuple(e["to"])] = (k, False)
    seen, faces = set(), []
    for k in range(len(edges)):
        for fwd in (True, False):
            if (k, fwd) in seen:
                continue
            face, cur = [], (k, fwd)
            while cur not in seen:
                seen.add(cur)
                e = edges[cur[0]]
                x, p = e["to"] if cur[1] else e["from"]
                q = (p - 1) % 4
                face.append((cur, x, q))
                cur = dep[(x, q)]
            faces.append(face)
    return faces


def solve_heights(spec, crossings, edges, comps):
    import numpy as np
    from scipy.optimize import milp, LinearConstraint, Bounds

    ids = [c["id"] for c in crossings]
    faces = trace_faces(crossings, edges)
    # geometric signed area of each face from the drawn polylines picks out the outer face
    pts_of_edge = edge_polylines(crossings, edges, comps)
    def geo_area(face):
        poly = []
        for (k, fwd), _, _ in face:
            seg = pts_of_edge[k] if fwd else list(reversed(pts_of_edge[k]))
            poly.extend(seg[:-1])
        a = 0.0
        for i in range(len(poly)):
            (x1, y1), (x2, y2) = poly[i], poly[(i + 1) % len(poly)]
            a += float(x1) * float(y2) - float(x2) * float(y1)
        return a / 2
    areas = [geo_area(f) for f in faces]
    outer = min(range(len(faces)), key=lambda i: areas[i])
    rows = []
    for i, f in enumerate(faces):
        row = [0] * len(ids)
        for _, x, q in f:
            row[ids.index(x)] += 1 if q % 2 == 0 else -1
        rows.append(row if i != outer else [-v for v in row])
    # surgery crossings must stay smaller than the faces at their positive corners, so the
    # smoothed diagram is still realisable
    for sid in spec.get("surgery", []):
        for i, f in enumerate(faces):
            if i != outer and any(x == sid and q % 2 == 0 for _, x, q in f):
                row = list(rows[i])
                row[ids.index(sid)] -= 1
                rows.append(row)
    n = len(ids)
    weights = spec.get("weights", {})
    c = np.array([float(weights.get(i, 1)) for i in ids])
    lo = np.array([float(spec.get("min_height", {}).get(i, 1)) for i in ids])
    hi = np.array([float(spec.get("max_height", {}).get(i, 10**6)) for i in ids])
    res = milp(c, constraints=LinearConstraint(np.array(rows, dtype=float), lb=np.ones(len(rows))),
               bounds=Bounds(lo, hi), integrality=np.ones(n))
    if res.status != 0:
        raise ValueError("no admissible heights for this crossing information")
    for cr, h in zip(crossings, res.x):
        cr["height"] = f"{int(round(h))}/1"


def edge_polylines(crossings, edges, comps):
    return [e["_pts"] for e in edges]


def dumps(obj):
    """indent=2, but arrays of scalars stay on one line"""
    import re
    text = json.dumps(obj, indent=2)
    return re.sub(r"\[\s*([^\[\]{}]*?)\s*\]",
                  lambda m: "[" + ", ".join(p.strip() for p in m.group(1).split(",")) + "]" if m.group(1).strip() else "[]",
                  text)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("spec")
    ap.add_argument("out", nargs="?")
    ap.add_argument("--list", action="store_true", help="print crossings with positions and heights")
    ap.add_argument("--enumerate", action="store_true",
                    help="try every over/under assignment and print the ones with admissible heights")
    args = ap.parse_args()
    with open(args.spec) as f:
        spec = json.load(f)
    if args.enumerate:
        geom = geometry(spec)
        n = len(geom[1])
        for mask in range(1 << n):
            over = {f"x{i}": ("second" if mask >> i & 1 else "first") for i in range(n)}
            try:
                out, _ = build(spec, over, geom)
            except ValueError:
                continue
            print(json.dumps(over))
        return
    if args.list:
        _, crossings = build(dict(spec, heights="none"))
        for c in crossings:
            x, y = c["_pt"]
            s = ", ".join(f"{n}{'(over)' if o else ''}" for n, o in c["_strands"])
            print(f"{c['id']:>6}  ({float(x):7.3f}, {float(y):7.3f})  h={float(F(c['height'])):.5f}  {s}")
    if args.out:
        out, crossings = build(spec)
        with open(args.out, "w") as f:
            f.write(dumps(out) + "\n")


if __name__ == "__main__":
    main()
