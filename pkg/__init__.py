"""
Elliptic WDVV - A toolkit for verifying elliptic trilogarithm solutions of the WDVV equations.
"""
