from .Pinv import *
