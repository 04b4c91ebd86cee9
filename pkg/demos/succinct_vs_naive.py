"""
Succinct trie against the unpruned trie
=======================================

Both tries hold the same numbers.  The unpruned one builds f_xy and
f_yx separately, so its node count grows like 2^d instead of d^2.
"""

from smooth_tower import parse, eval_tower, extract, track
from smooth_tower.multiindex import multi_indices_upto
from smooth_tower.oracle import naive_demand, naive_eval, naive_track

expr = parse("sin(x)*exp(y^2)", ["x", "y"])
at = {"x": 0.7, "y": 0.4}

print(" d  succinct  naive")
for d in range(2, 9):
    wanted = multi_indices_upto(2, d)

    tower = eval_tower(expr, at)
    succinct = track(tower)
    for idx in wanted:
        extract(tower, idx)

    trie = naive_eval(expr, at)
    naive = naive_track(trie)
    naive_demand(trie, wanted)

    print(f"{d:2d}  {succinct.computations:8d}  {naive.nodes:5d}")

# the identity: bounded on one side, linear on the other
tower = eval_tower(parse("x", ["x"]), {"x": 0.7})
c = track(tower)
for k in range(101):
    extract(tower, (k,))
print("identity, orders 0..100, succinct computations:", c.computations)
