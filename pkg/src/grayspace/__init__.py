"""Gray codes and enumerative coding for subspaces of finite vector spaces."""

__version__ = "0.1.0"
