"""Multi-point studies built on the numerical kernels."""
