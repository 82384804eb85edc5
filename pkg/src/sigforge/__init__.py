"""Algebraic signatures in a small theory of signatures, elaborated to a
core calculus and interpreted as algebras (A), morphisms (M), displayed
algebras (D) and sections (S)."""
from .diagnostics import Diagnostic, SigforgeError
from .elab import Signature, elaborate, load, load_file
from .profile import Profile

__version__ = "0.1.0"

__all__ = ["Diagnostic", "SigforgeError", "Signature", "elaborate", "load", "load_file",
           "Profile", "__version__"]
