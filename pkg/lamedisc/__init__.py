"""Hill discriminant of Lame's equation near the Legendre limit."""

__version__ = "0.1.0"
