from .Distribution1D import *
from .Theorem1 import *
