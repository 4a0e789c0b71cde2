# Vertex cuts on the efficiency graph
from src.cuts.flow import FlowNetwork, PathBundle, disjoint_paths, is_in_minimum, min_cut_size
from src.cuts.lattice import cut_meet, cut_partial_order, is_cut, is_minimal_cut
