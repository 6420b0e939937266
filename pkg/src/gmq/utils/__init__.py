"""Contains utils packages."""
