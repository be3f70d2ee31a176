"""The 3-chain into the diamond: the same two points, a finer topology."""

from finframe.frame import Frame
from finframe.generate import b2, c3, random_chains
from finframe.refine import FrameMorphism, StratChain, bij_points_check, pt_of_morphism, strat_chain_check

F, G = Frame.from_poset(c3()), Frame.from_poset(b2())
phi = FrameMorphism.from_mapping(F, G, {"0": "0", "m": "a", "1": "1"})
print("pt(phi):", pt_of_morphism(phi))
for stage in strat_chain_check(StratChain((phi,))).details["stages"]:
    print(stage)

bijective = sum(bij_points_check(a, b).details["bijective"] for a, b in random_chains(200, seed=0))
print("random chains with bijective points:", bijective, "of 200")
