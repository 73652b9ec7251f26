"""Higher-order logic interpreted in a KOCA, with two finite arithmetic models.

Run: python demos/higher_order_arithmetic.py
"""

from kocalab import homega as H
from kocalab.koca import boolean

x = boolean(2)
sig = H.pa_signature()
sig.variables["P"] = H.O

# A derivation of P => P and the realizer extracted from it.
d = H.parse_derivation("imp_i(h : P, ax(h))", sig)
seq = H.check_derivation(d)
print("proved:", seq)
print("realizer sound in the model:", H.satisfies(x, H.truncated_model(x, 3), seq))

# Leibniz equality is sugar for a second-order formula.
eq = H.parse_expr("add (succ 0) (succ 0) = succ (succ 0)", sig)
print("expands to:", H.show(eq))

# In Z/3 we have succ 2 = 0, so "succ x = 0 implies bot" is false at x = 2
# and no realizer can sit below its value.  The truncated model keeps 0
# out of the image of succ.
for name, interp in (("Z/3", H.zmod_model(x, 3)), ("truncated 3", H.truncated_model(x, 3))):
    rep = H.pa_axioms_check(x, interp)
    print(f"\nPeano checks in {name}: {'all pass' if rep.passed else 'failures'}")
    for c in rep.checks:
        print(f"   {c.name:24s} {'ok' if c.passed else 'FAIL ' + str(c.witness)}")
