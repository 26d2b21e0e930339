# Import subpackage methods
from .closure import *

# Import main package methods
from .errors import *
from .settings import *
from .algebra import *
from .lattice import *
from .commutator import *
from .retract import *
from .paper_example import *
from ._version import __version__
