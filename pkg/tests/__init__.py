"""Test suite for Real Betti"""
