from .LinearModel import *
from .LeastSquares import *
