"""Quick check of the installed extension module."""

import json

import quadrant_phf as q

print(q.__version__)
for line in q.models():
    print(line)

simple = q.Walk.catalog("simple")
tandem = q.Walk.catalog("tandem")
assert simple.group_order == 4 and tandem.group_order == 6
assert tandem.pi_over_theta == 3

fam = q.Family(tandem)
h = fam.get(2, 1)
print(h)
assert h.pole_orders() == (5, 5)
assert h.check_grid(12)
assert tandem.laplacian(h.gf) == fam.get(1, 1).gf
f1, g1 = h.decouplers()[0]
print("F_1 =", f1.text())

back = q.RationalFunction.from_json(h.gf.to_json())
assert back == h.gf
assert len(json.loads(h.to_json())["chain"]) == 2

s = q.Family(simple)
combo = s.get(1, 1).gf.scale("3") + s.get(2, 2).gf.scale("-1/2")
coeffs, exact = s.decompose(combo)
assert exact and dict(coeffs) == {(1, 1): "3", (2, 2): "-1/2"}, coeffs

assert q.simple_walk_count(0, 0, 4) == "10"
rows = q.count_paths(simple, 6)
assert (4, 0, 0, "10") in rows

print(q.continuous(simple, 2, 1))
code, out = q.run(["compute", "--model", "simple", "-n", "2", "--latex"])
assert code == 0, out
code, _ = q.run(["compute", "--model", "nosuch"])
assert code == 2
print("smoke test ok")
