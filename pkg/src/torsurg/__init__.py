"""Torus-surgery calculator for 4-manifold models."""
