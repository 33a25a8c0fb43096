"""Index and maximal reductive stabilisers of seaweed and parabolic subalgebras."""

from .meander import mrs_gl, seaweed_index
from .reductive import ReductiveType
from .rootsys import SimpleType

__version__ = "0.1.0"

__all__ = ["ReductiveType", "SimpleType", "mrs_gl", "seaweed_index", "__version__"]
