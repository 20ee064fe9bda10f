"""Computation engine - truncated series, strata and the semistable recursion"""
