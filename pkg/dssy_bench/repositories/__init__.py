from .mesh import MeshRepository
