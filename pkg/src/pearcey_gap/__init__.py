"""pearcey-gap - large-gap asymptotics of the Pearcey determinant, computed and verified."""

__version__ = "1.0.0"
