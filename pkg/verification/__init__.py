"""
Verification Runs
"""
