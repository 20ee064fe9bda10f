"""
Real Betti - Backend
Z/2 Betti numbers of moduli spaces of real bundles over a real curve
"""
__version__ = "0.1.0"
