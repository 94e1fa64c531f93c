"""Core numerics for heat kernels and their bounds."""
