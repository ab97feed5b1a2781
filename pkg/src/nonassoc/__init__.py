"""Exact computations with finite-dimensional non-associative algebras.

The ground field is Q or a prime field GF(p); arithmetic is exact
throughout.  Submodules:

- :mod:`nonassoc.fields` scalars and fields
- :mod:`nonassoc.linalg` matrices, RREF and canonical subspaces
- :mod:`nonassoc.words` non-associative words
- :mod:`nonassoc.polys` polynomials in non-associative variables
- :mod:`nonassoc.algebra` algebras by structure constants and their morphisms
- :mod:`nonassoc.varieties` identities, reflections, truncated free objects
- :mod:`nonassoc.io` text formats, :mod:`nonassoc.cli` the command line
"""

from .algebra import *  # noqa: F401,F403
from .errors import *  # noqa: F401,F403
from .fields import *  # noqa: F401,F403
from .linalg import *  # noqa: F401,F403
from .polys import *  # noqa: F401,F403
from .varieties import *  # noqa: F401,F403
from .words import *  # noqa: F401,F403

__version__ = "0.1.0"
