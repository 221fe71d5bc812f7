"""geobound: manifolds that bound geometrically, assembled from right-angled pieces.

The package builds two families of cusped hyperbolic 3-manifolds (one
arithmetic, from the ideal right-angled octahedron; one non-arithmetic, from
a right-angled polyhedron obtained as a reflection orbit of a Coxeter
pyramid), promotes them to 4-manifolds with totally geodesic boundary, and
runs the counting census behind the construction.
"""

__version__ = "0.1.0"
