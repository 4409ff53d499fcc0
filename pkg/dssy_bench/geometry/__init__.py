from .bilinear import (
    RECTANGLE_TOL,
    REFERENCE_MIDPOINTS,
    REFERENCE_VERTICES,
    BilinearDecomposition,
    IntermediateQuad,
    Quadrilateral,
    convexity_margin,
    decompose,
    decompose_many,
    forward_map,
    intermediate_quad,
    is_rectangle,
    jacobian,
    simple_map,
    simple_map_det,
)
