"""The four-element Boolean algebra as a Krivine ordered combinatory algebra.

Run: python demos/boolean_koca.py
"""

from kocalab.combterm import parse_term
from kocalab.koca import boolean, check_koca, double_negation_realizer, heyting_check
from kocalab.oca import derived_basic_combinators, entails, eval_term

x = boolean(2)
print("carrier:", x.carrier, " top:", x.carrier[x.top], " filter:", [x.carrier[f] for f in x.phi])

for rep in (check_koca(x), heyting_check(x), double_negation_realizer(x)):
    print(f"{rep.suite:28s} {'ok' if rep.passed else 'FAILED'}  ({len(rep.checks)} checks)")

# Application is meet here, so every combinator collapses to top.
print("derived combinators:", {k: x.carrier[v] for k, v in derived_basic_combinators(x).items()})

# Terms with variables are compiled away by bracket abstraction before
# evaluation; s k k behaves as the identity.
term = parse_term("s k k b01", constants=x.carrier)
print("s k k b01 =", x.carrier[eval_term(x, term)])

# Entailment needs a realizer drawn from the filter.
b01, b11 = x.index("b01"), x.index("b11")
print("b01 entails b11 via", x.carrier[entails(x, b01, b11)])
print("b11 entails b01:", entails(x, b11, b01))
k_term = parse_term("k b01 b10", constants=x.carrier)
print("k b01 b10 =", x.carrier[eval_term(x, k_term)], "(below b01, as the k axiom requires)")
