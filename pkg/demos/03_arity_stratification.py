"""How the lattice of k-ideals changes with the arity k."""

from finframe.frame import OMEGA, Arity, k_ideals
from finframe.generate import p6, triple_join
from finframe.poset import is_distributive

for name, P in (("P6", p6()), ("triple join", triple_join())):
    print(name)
    for arity in (Arity(2), Arity(3), Arity(4), OMEGA):
        IL = k_ideals(P, arity)
        verdict = is_distributive(IL.lattice())
        print(f"  k={arity}: {len(IL)} ideals, distributive={verdict.ok}, witness={verdict.witness}")
