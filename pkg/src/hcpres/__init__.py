"""Resistance-distance edge weighting for the Hamiltonian cycle problem."""
