from .Dataset import *
from .Experiment import *
from .Results import *
from .Split import *
from .Statistics import *
