from .BoxQP import *
from .ICLS import *
from .Method import *
from .Oracle import *
from .SelfLearning import *
from .USM import *
