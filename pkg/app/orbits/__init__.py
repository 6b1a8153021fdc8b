# Partition sequences and orbit trees
from app.orbits.eqseq import EqSeq, discrete_seq, eqseq_from_dict, make_eqseq, orbit_tree, orbit_tree_index, product_seq
from app.orbits.embeddings import OrbitMap, reduction_embedding, saturation_map, surjection_embedding
