"""Points, the point space and the Hochster dual of the 3-chain."""

from finframe.frame import Frame
from finframe.generate import c3
from finframe.hochster import double_dual_check, dual_point_bijection, hochster_dual
from finframe.stone import point_space, stone_round_trip

F = Frame.from_poset(c3())
X = point_space(F)
print("points:", X.points)
print("opens:", [X.label(U) for U in X.sorted_opens()])
print("round trip:", stone_round_trip(X=X, F=F).ok)

D = hochster_dual(F).frame
print("dual elements:", D.elements)
print("point bijection:", dual_point_bijection(F))
print("double dual:", double_dual_check(F).ok)
