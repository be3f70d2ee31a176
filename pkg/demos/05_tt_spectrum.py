"""Radical ideals, spectrum, supports and quotients of the subsets-of-{1,2} model."""

from finframe.frame import Frame
from finframe.generate import b2, subs2
from finframe.ttg import prime_tensor_ideals, quotient_frame, rad_lattice, spc, support_data, universal_morphism

T = subs2()
RF = rad_lattice(T)
print("radical ideals:", RF.labels())
print("primes:", [P.label for P in prime_tensor_ideals(T)])
print("spectrum:", spc(T).points)

G = Frame.from_poset(b2())
for D in support_data(T, G):
    print("support", D.table(T), "->", universal_morphism(T, D).mapping())

for S in RF.ideals:
    print("quotient by", T.label(S), "keeps", quotient_frame(T, S).points)
