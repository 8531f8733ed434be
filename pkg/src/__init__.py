"""
5-Qubit SLOCC Invariants Engine
"""
