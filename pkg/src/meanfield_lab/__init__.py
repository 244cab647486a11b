"""meanfield-lab - exact N-body vs. fermionic Hartree dynamics on a lattice."""

__version__ = "0.1.0"
