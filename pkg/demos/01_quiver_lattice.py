"""The five-element lattice with three incomparable middles is a lattice but not a frame."""

from finframe.frame import Frame
from finframe.generate import b2, m3
from finframe.poset import as_lattice, is_distributive
from finframe.stone import points

L = as_lattice(m3())
verdict = is_distributive(L)
print("M3 distributive:", verdict.ok, "witness:", verdict.witness)

F = Frame.from_poset(b2())
print("diamond points:", [x.name for x in points(F)])
