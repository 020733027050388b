"""Exact verification engine for the space of initial values of a
fourth-order Painlevé system in two canonical pairs with affine Weyl
group symmetry of type A5+A1.

The package machine-checks, in exact rational arithmetic, the complete
geometric analysis of the system: its Hamiltonian structure, its
birational symmetries and their group relations, the 24-chart atlas on
which the flow is everywhere polynomial, the catalogue of accessible
singularities and their resolution by formal series, the holomorphy
characterization of the Hamiltonian, and numerical continuation of
trajectories through movable singularities by chart switching.
"""

__version__ = "0.1.0"
