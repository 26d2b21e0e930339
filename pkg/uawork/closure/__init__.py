from .utilities import *
from .subpower_base import *
