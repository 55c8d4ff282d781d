"""Exact computation in graph products of finite groups."""
