"""
Robust GP Test Suite
Tests for numerical core, robust fitting, CLI and benchmarks
"""
