"""Quantile regression with generalized multiquadric (GMQ) smoothing."""
