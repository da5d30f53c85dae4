from quadratic_twist_series.lattice.annulus import annulus_constants, fit_annulus_constants
from quadratic_twist_series.lattice.decomposition import decompose_pair
from quadratic_twist_series.lattice.reduction import lattice_contains, shortest_vectors
from quadratic_twist_series.lattice.roots import omega_d
from quadratic_twist_series.lattice.sums import q_partial, r_via_lattices, triples_up_to

__all__ = [
    "annulus_constants",
    "decompose_pair",
    "fit_annulus_constants",
    "lattice_contains",
    "omega_d",
    "q_partial",
    "r_via_lattices",
    "shortest_vectors",
    "triples_up_to",
]
