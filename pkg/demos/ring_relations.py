"""
Formal classes and their volumes
================================

Relations between classes are oriented rewrite rules.  A region of the
plane cut out by a square-root graph is equivalent to a 1 x ab rectangle,
which flattens to the interval [0, ab].
"""
from scissorkit import normalize, parse_expr, parse_relation_script, vol_eval

script = """
atom K_ab 2
atom C_ab 2
atom I_ab 1
equiv K_ab = C_ab
product C_ab = I * I_ab
flatten C_ab = I_ab
query K_ab
query K_ab * K_ab - C_ab * I_ab
"""
store, queries = parse_relation_script(script)
for q in queries:
    print(q, "->", normalize(store, q))

# the volume map respects every relation
print("vol(K_ab) with ab = 6:", vol_eval(store, parse_expr("K_ab"), {"I_ab": 6}))
