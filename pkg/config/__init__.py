"""Configuration: environment tolerances and the manifold catalog."""
