from .generators import random_mesh, theta_mesh
from .topology import LOCAL_EDGES, Mesh, build_topology, validate_cells
