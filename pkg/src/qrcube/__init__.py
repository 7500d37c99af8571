"""Quantum Rubik's cube matrices and the computations built on them."""
